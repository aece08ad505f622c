// qpb: command-line front end.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "qpb/suites.hpp"

using namespace qpb;

namespace {

struct Args {
    std::string alg = "mq";
    int n = 2, r = 1, k = 0, degree = 0;
    bool twist = false, timing = false;
    std::string q = "symbolic";
    std::string theta_file;
    std::string invert;
    std::string format = "text";
    std::uint64_t seed = 0;
    std::uint64_t budget = 0;
    std::string mode = "both";
    std::string suite;
    std::vector<std::string> exprs;
};

struct Usage : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

std::vector<int> parse_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            out.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw Usage("bad index list: " + s);
        }
    }
    return out;
}

std::optional<mpq_class> q_value(const Args& a) {
    if (a.q == "symbolic" || a.q == "q") return std::nullopt;
    mpq_class v;
    if (v.set_str(a.q, 10) != 0) throw Usage("--q expects a rational or 'symbolic'");
    v.canonicalize();
    if (v == 0) throw Usage("--q must be nonzero");
    return v;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Usage("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::optional<CocycleSpec> theta(const Args& a) {
    if (a.theta_file.empty()) return std::nullopt;
    return CocycleSpec::from_theta(a.n, read_file(a.theta_file));
}

AlgebraPtr algebra(const Args& a) {
    AlgebraFamily f = family_from_name(a.alg);
    if (!a.twist) {
        AlgebraSpec s;
        s.family = f;
        s.n = a.n;
        s.r = a.r;
        return cached(s);
    }
    if (auto th = theta(a)) return build_multiparametric(f, a.n, *th);
    if (f == AlgebraFamily::ProjectiveRing) {
        AlgebraSpec s;
        s.family = f;
        s.n = a.n;
        s.twist = true;
        return cached(s);
    }
    return multiparametric(f, a.n);
}

// The ring an expression lives in: the algebra, or its localization.
struct Context {
    AlgebraPtr alg;
    LocalizedPtr loc;
    const Ring& ring() const { return loc ? static_cast<const Ring&>(*loc) : alg->pres(); }
};

Context context(const Args& a) {
    Context c;
    c.alg = algebra(a);
    if (!a.invert.empty()) {
        if (a.twist) throw Usage("--invert does not combine with --twist");
        c.loc = localize(c.alg, parse_list(a.invert));
    }
    return c;
}

NcPoly specialize(const NcPoly& p, const Args& a) {
    auto q = q_value(a);
    if (!q) return p;
    return p.map_scalars([&](const Scalar& s) { return s.specialize(*q, false); });
}

TensorPoly specialize(const TensorPoly& t, const Args& a) {
    auto q = q_value(a);
    if (!q) return t;
    TensorPoly out(t.rank());
    for (auto& [k, v] : t.terms()) out.add(k, v.specialize(*q, false));
    return out;
}

SuiteReport single(const std::string& cmd, const Args& a, const std::string& input, const std::string& output) {
    SuiteReport rep;
    rep.suite = cmd;
    rep.n = a.n;
    rep.k = a.k;
    rep.degree = a.degree;
    rep.seed = a.seed;
    CheckResult c;
    c.id = "result";
    c.statement = input;
    c.info["output"] = output;
    rep.checks.push_back(c);
    return rep;
}

int emit(const SuiteReport& rep, const Args& a, bool verify) {
    if (a.format == "json") {
        std::cout << rep.json(a.timing) << "\n";
    } else if (verify) {
        std::cout << rep.text(a.timing);
    } else {
        for (auto& c : rep.checks) std::cout << c.info.at("output") << "\n";
    }
    return verify && !rep.pass() ? 1 : 0;
}

std::string expr_arg(const Args& a, std::size_t i) {
    if (a.exprs.size() <= i) throw Usage("missing expression argument");
    return a.exprs[i];
}

int run_cmd(const std::string& cmd, const Args& a) {
    if (a.budget) set_budget_cap(a.budget);
    if (a.format != "json" && a.format != "text") throw Usage("--format must be json or text");
    if (cmd == "verify") {
        SuiteOptions o;
        o.n = a.n;
        o.k = a.k;
        o.degree = a.degree;
        o.seed = a.seed;
        if (auto q = q_value(a)) o.q = *q;
        o.theta = theta(a);
        if (o.theta) o.theta_text = o.theta->str();
        const auto& names = suite_names();
        if (a.suite != "all" && std::find(names.begin(), names.end(), a.suite) == names.end())
            throw Usage("unknown suite " + a.suite);
        return emit(run_suite(a.suite, o), a, true);
    }
    if (cmd == "build") {
        AlgebraPtr A = algebra(a);
        const Presentation& P = A->pres();
        if (a.degree) P.ensure_complete(a.degree);
        std::string out = P.name() + "\ngenerators:";
        for (auto& g : P.generators()) out += " " + format_letter(g);
        for (auto& r : P.rules()) out += "\n" + format_word(r.lhs) + " -> " + format(specialize(r.rhs, a), P.order());
        return emit(single(cmd, a, P.name(), out), a, false);
    }
    if (cmd == "det") {
        Context c = context(a);
        const Ring& R = c.ring();
        std::string out = R.show(specialize(qdet(R), a));
        return emit(single(cmd, a, "det_q in " + R.name(), out), a, false);
    }
    if (cmd == "nf" || cmd == "localize") {
        Args b = a;
        if (cmd == "localize" && b.invert.empty()) throw Usage("localize needs --invert");
        Context c = context(b);
        const Ring& R = c.ring();
        SuiteReport rep = single(cmd, a, "", "");
        rep.checks.clear();
        // one check per expression, in argument order
        for (auto& e : a.exprs) {
            NcPoly p = parse(e, R.descriptor());
            rep.checks.push_back(single(cmd, a, e, R.show(specialize(R.normal_form(p), a))).checks.front());
        }
        return emit(rep, a, false);
    }
    if (cmd == "coact") {
        Context c = context(a);
        std::string e = expr_arg(a, 0);
        NcPoly p = parse(e, c.ring().descriptor());
        TensorPoly t;
        if (c.loc) {
            TensorPoly raw = c.loc->coaction(p);  // throws unless the base is SL_n
            t = reduce_legs(raw, {c.loc.get(), &c.loc->parabolic()->pres()});
        } else {
            const Ring& R = c.alg->pres();
            t = reduce_legs(c.alg->coproduct(p), {&R, &R});
        }
        return emit(single(cmd, a, e, format(specialize(t, a))), a, false);
    }
    if (cmd == "twist-product") {
        Args b = a;
        b.twist = false;
        Context c = context(b);
        const Ring& R = c.ring();
        CocycleSpec s = a.theta_file.empty() ? default_cocycle(family_from_name(a.alg), a.n) : *theta(a);
        TwistedRing T(R, mode_from_name(a.mode), s);
        std::string x = expr_arg(a, 0), y = expr_arg(a, 1);
        NcPoly out = T.mul(parse(x, R.descriptor()), parse(y, R.descriptor()));
        return emit(single(cmd, a, "(" + x + ") o (" + y + ")", R.show(specialize(T.normal_form(out), a))), a, false);
    }
    throw Usage("unknown command " + cmd);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum principal bundle engine"};
    app.require_subcommand(1);
    Args a;

    auto common = [&](CLI::App* s) {
        s->add_option("--n", a.n, "matrix size")->check(CLI::Range(2, 9));
        s->add_option("--format", a.format, "json or text");
        s->add_option("--q", a.q, "rational value for q, or symbolic");
        s->add_option("--seed", a.seed, "sampling seed");
        s->add_option("--budget", a.budget, "rule applications per reduction");
        s->add_flag("--timing", a.timing, "report elapsed seconds");
    };
    auto algebra_opts = [&](CLI::App* s) {
        s->add_option("--alg", a.alg, "mq, glq, slq, pq, torus, projq, parq");
        s->add_option("--r", a.r, "rows of the parabolic quotient");
        s->add_flag("--twist", a.twist, "multiparametric version");
        s->add_option("--theta-file", a.theta_file, "lines 'j k g^m'");
    };

    auto* build = app.add_subcommand("build", "print a presentation");
    common(build);
    algebra_opts(build);
    build->add_option("--degree", a.degree, "complete up to this degree first");

    auto* nf = app.add_subcommand("nf", "normal form of an expression");
    common(nf);
    algebra_opts(nf);
    nf->add_option("--invert", a.invert, "localize at d_i, e.g. 1,2");
    nf->add_option("expr", a.exprs)->required();

    auto* det = app.add_subcommand("det", "quantum determinant in normal form");
    common(det);
    algebra_opts(det);
    det->add_option("--invert", a.invert, "localize at d_i");

    auto* coact = app.add_subcommand("coact", "coproduct, or the coaction over O_q(P) with --invert");
    common(coact);
    algebra_opts(coact);
    coact->add_option("--invert", a.invert, "localize at d_i");
    coact->add_option("expr", a.exprs)->required();

    auto* loc = app.add_subcommand("localize", "normal form in a localization");
    common(loc);
    algebra_opts(loc);
    loc->add_option("--invert", a.invert, "indices i with d_i inverted")->required();
    loc->add_option("expr", a.exprs)->required();

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    common(verify);
    verify->add_option("suite", a.suite, "suite name or all")->required();
    verify->add_option("--k", a.k, "chart index");
    verify->add_option("--degree", a.degree, "degree bound");
    verify->add_option("--theta-file", a.theta_file, "lines 'j k g^m'");

    auto* tp = app.add_subcommand("twist-product", "twisted product of two expressions");
    common(tp);
    algebra_opts(tp);
    tp->add_option("--mode", a.mode, "gamma, sigma or both");
    tp->add_option("--invert", a.invert, "localize at d_i");
    tp->add_option("exprs", a.exprs)->required()->expected(2);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    std::string cmd = app.get_subcommands().front()->get_name();
    if (cmd == "localize" && !loc->get_option("--alg")->count()) a.alg = "slq";
    try {
        return run_cmd(cmd, a);
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exhausted: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
