// One line per acceptance criterion: "[PASS] 5 cleaving ... (12.3s)".
// Exit 0 iff every criterion passes, except those named by --known-red,
// which are still run and printed.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qpb/suites.hpp"

using namespace qpb;

namespace {

struct Run {
    std::string suite;
    int n;
    int degree = 0;
    mpq_class q = 1;
    // keep only check ids starting with one of these; empty keeps all
    std::vector<std::string> only;
};

struct Criterion {
    int id;
    std::string title;
    std::vector<Run> runs;
};

struct Outcome {
    bool pass = true;
    std::size_t checks = 0, skipped = 0;
    std::string witness;
};

bool wanted(const std::string& id, const std::vector<std::string>& only) {
    if (only.empty()) return true;
    for (auto& p : only)
        if (id.rfind(p, 0) == 0) return true;
    return false;
}

Outcome evaluate(const Criterion& c, bool verbose) {
    Outcome out;
    for (auto& r : c.runs) {
        SuiteOptions o;
        o.n = r.n;
        o.degree = r.degree;
        o.q = r.q;
        SuiteReport rep = run_suite(r.suite, o);
        for (auto& ch : rep.checks) {
            if (!wanted(ch.id, r.only)) continue;
            if (ch.status == Status::Skip) {
                ++out.skipped;
                continue;
            }
            ++out.checks;
            if (verbose)
                std::cout << "    " << status_name(ch.status) << " " << r.suite << "/n" << r.n << "/" << ch.id << "\n";
            if (ch.status == Status::Fail) {
                if (out.pass) out.witness = r.suite + " n=" + std::to_string(r.n) + " " + ch.id + ": " + ch.witness;
                out.pass = false;
            }
        }
    }
    if (out.checks == 0) {
        out.pass = false;
        out.witness = "no checks ran";
    }
    return out;
}

std::vector<Criterion> criteria() {
    return {
        {1, "confluence of M_n (n=2,3,4), SL_n, P and multiparametric variants",
         {{"confluence", 2}, {"confluence", 3}, {"confluence", 4}}},
        {2, "Hopf axioms for SL_n, P, torus (n=2,3)", {{"hopf", 2}, {"hopf", 3}}},
        {3, "det_q central, grouplike, permutation forms, first-column Laplace (n=2,3)", {{"det", 2}, {"det", 3}}},
        {4, "J_1(det_q(p)) = det_q(a) (n=2,3)", {{"factorization", 2}, {"factorization", 3}}},
        {5, "cleaving maps (n=2 k=1,2; n=3 k=1,2,3) and trivialization at D=3",
         {{"cleaving", 2}, {"cleaving", 3}, {"trivialization", 2, 3}, {"trivialization", 3, 3}}},
        {6, "coinvariants = span of d_j d_i^-1 monomials (L=4 at n=2, L=3 at n=3)",
         {{"coinvariants", 2}, {"coinvariants", 3}}},
        {7, "sheaf functoriality, comodule restrictions, order independence (n=3), pullback (n=2, D=3)",
         {{"sheaf", 3}, {"sheaf", 2, 0, 1, {"pullback"}}}},
        {8, "Grassmannian semi-coinvariance for (2,1),(3,1),(3,2),(4,2)",
         {{"grassmannian", 2}, {"grassmannian", 3}, {"grassmannian", 4, 0, 1, {"r2"}}}},
        {9, "twist: projective relation, inverses, twisted cleaving, commuting twists, tau",
         {{"twist", 2}, {"twist", 3}}},
        {10, "classical limit: commutativity at q=1, g=1 and the n=2 coaction of b",
         {{"classical", 2}, {"classical", 3}}},
        {11, "negative controls: corrupted Manin coefficients and cleaving images fail",
         {{"negative", 2}, {"negative", 3}}},
    };
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria"};
    std::vector<int> known_red, only;
    bool verbose = false;
    app.add_option("--known-red", known_red, "criteria whose failure does not change the exit code");
    app.add_option("--only", only, "run just these criteria");
    app.add_flag("-v,--verbose", verbose, "print every check");
    CLI11_PARSE(app, argc, argv);
    std::set<int> red(known_red.begin(), known_red.end()), pick(only.begin(), only.end());

    int passed = 0, total = 0;
    bool ok = true;
    for (auto& c : criteria()) {
        if (!pick.empty() && !pick.count(c.id)) continue;
        ++total;
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = evaluate(c, verbose);
        } catch (const std::exception& e) {
            o.pass = false;
            o.witness = std::string("error: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.1fs", secs);
        std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << c.id << " " << c.title << " (" << o.checks << " checks";
        if (o.skipped) std::cout << ", " << o.skipped << " skipped";
        std::cout << ", " << buf << ")";
        if (!o.pass) std::cout << (red.count(c.id) ? " known red" : "") << "\n    " << o.witness;
        std::cout << std::endl;
        if (o.pass) ++passed;
        else if (!red.count(c.id)) ok = false;
    }
    std::cout << passed << "/" << total << " criteria pass" << std::endl;
    return ok ? 0 : 1;
}
