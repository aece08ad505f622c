#include "qpb/suites.hpp"

#include <chrono>
#include <future>

namespace qpb {

namespace {

void fail(SubCheck& c, const std::string& w) {
    c.pass = false;
    if (c.witness.empty()) c.witness = w;
}

CheckResult from_sub(const std::string& id, const std::string& statement, const SubCheck& s) {
    CheckResult r;
    r.id = id;
    r.statement = statement;
    r.status = s.skip ? Status::Skip : s.pass ? Status::Pass : Status::Fail;
    r.witness = s.witness;
    r.cases = s.checked;
    if (!s.note.empty()) r.info["note"] = s.note;
    return r;
}

CheckResult skipped(const std::string& id, const std::string& statement, const std::string& why) {
    CheckResult r;
    r.id = id;
    r.statement = statement;
    r.status = Status::Skip;
    r.witness = why;
    return r;
}

class Runner {
public:
    explicit Runner(SuiteReport& rep) : rep_(rep) {}
    // Runs f, stamps elapsed; exceptions become failures.
    void add(const std::string& id, const std::string& statement, const std::function<SubCheck()>& f) {
        addr(id, statement, [&] { return from_sub(id, statement, f()); });
    }
    void addr(const std::string& id, const std::string& statement, const std::function<CheckResult()>& f) {
        auto t0 = std::chrono::steady_clock::now();
        CheckResult r;
        try {
            r = f();
        } catch (const BudgetExceeded&) {
            throw;
        } catch (const std::exception& e) {
            r.id = id;
            r.statement = statement;
            r.status = Status::Fail;
            r.witness = std::string("error: ") + e.what();
        }
        r.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        rep_.checks.push_back(std::move(r));
    }
    void skip(const std::string& id, const std::string& statement, const std::string& why) {
        rep_.checks.push_back(skipped(id, statement, why));
    }

private:
    SuiteReport& rep_;
};

std::vector<int> charts(const SuiteOptions& o) {
    if (o.k) return {o.k};
    return range1(1, o.n);
}

std::string kid(int k) { return "k" + std::to_string(k); }

TensorPoly reduce3(const TensorPoly& t, const Ring& R) { return reduce_legs(t, {&R, &R, &R}); }

AlgebraPtr twisted_projective(int n) {
    AlgebraSpec s;
    s.family = AlgebraFamily::ProjectiveRing;
    s.n = n;
    s.twist = true;
    return cached(s);
}

// ---- suites ----

void confluence_suite(const SuiteOptions& o, int D, Runner& run) {
    const int n = o.n;
    // Fresh builds: the cached presentations are completed lazily by whatever
    // ran before, so their rule counts depend on scheduling.
    auto fresh = [n](AlgebraFamily f, bool twist) {
        AlgebraSpec s;
        s.family = f;
        s.n = n;
        return std::function<AlgebraPtr()>([s, twist] {
            if (twist && s.family != AlgebraFamily::ProjectiveRing)
                return build_multiparametric(s.family, s.n, default_cocycle(s.family, s.n));
            AlgebraSpec t = s;
            t.twist = twist;
            return build(t);
        });
    };
    std::vector<std::pair<std::string, std::function<AlgebraPtr()>>> algs{
        {"mq", fresh(AlgebraFamily::Mn, false)},
        {"projq", fresh(AlgebraFamily::ProjectiveRing, false)},
        {"projq_twisted", fresh(AlgebraFamily::ProjectiveRing, true)},
    };
    if (n <= 3) {
        for (auto [id, f] : std::vector<std::pair<std::string, AlgebraFamily>>{
                 {"glq", AlgebraFamily::GLn}, {"slq", AlgebraFamily::SLn}, {"pq", AlgebraFamily::P}})
            algs.push_back({id, fresh(f, false)});
        for (auto [id, f] : std::vector<std::pair<std::string, AlgebraFamily>>{{"mq_g", AlgebraFamily::Mn},
                                                                               {"glq_g", AlgebraFamily::GLn},
                                                                               {"slq_g", AlgebraFamily::SLn},
                                                                               {"pq_g", AlgebraFamily::P}})
            algs.push_back({id, fresh(f, true)});
        algs.push_back({"projq_g", [n] {
                            return build_multiparametric(AlgebraFamily::ProjectiveRing, n,
                                                         default_cocycle(AlgebraFamily::ProjectiveRing, n));
                        }});
    } else {
        run.skip("others", "GL, SL, P and multiparametric variants", "only M_n and the projective rings for n >= 4");
    }
    for (auto& [id, make] : algs) {
        run.addr(id, "overlaps resolve to zero up to degree " + std::to_string(D), [&, id = id, make = make] {
            AlgebraPtr A = make();
            ConfluenceReport c = A->pres().check_confluence(D);
            CheckResult r;
            r.id = id;
            r.statement = A->name() + ": overlaps resolve to zero up to degree " + std::to_string(D);
            r.status = c.pass ? Status::Pass : Status::Fail;
            r.cases = c.ambiguities;
            r.info["rules"] = std::to_string(A->pres().rules().size());
            if (!c.witnesses.empty()) r.witness = c.witnesses.front();
            return r;
        });
    }
    for (auto [id, f] : std::vector<std::pair<std::string, AlgebraFamily>>{{"nf_crosscheck_mq", AlgebraFamily::Mn},
                                                                           {"nf_crosscheck_slq", AlgebraFamily::SLn}}) {
        if (f == AlgebraFamily::SLn && n > 3) continue;
        run.add(id, "memoized and worklist reduction agree on sampled words", [&, f = f] {
            SubCheck c;
            AlgebraPtr A = cached(f, n);
            const Presentation& P = A->pres();
            for (auto& w : sample_words(P.generators(), std::min(D, 4), 150, o.seed)) {
                ++c.checked;
                NcPoly a = P.normal_form(NcPoly(w)), b = P.normal_form_worklist(NcPoly(w));
                if (!(a == b)) fail(c, format_word(w) + ": " + P.show(a) + " vs " + P.show(b));
            }
            return c;
        });
    }
}

void hopf_suite(const SuiteOptions& o, Runner& run) {
    const int n = o.n;
    std::vector<std::pair<std::string, AlgebraFamily>> fams{{"mq", AlgebraFamily::Mn}, {"torus", AlgebraFamily::Torus}};
    if (n <= 3)
        for (auto p : std::vector<std::pair<std::string, AlgebraFamily>>{
                 {"glq", AlgebraFamily::GLn}, {"slq", AlgebraFamily::SLn}, {"pq", AlgebraFamily::P}})
            fams.push_back(p);
    for (auto& [id, f] : fams) {
        AlgebraPtr A = cached(f, n);
        auto words = hopf_words(*A, 3, 40, o.seed);
        run.add(id + "/coassociativity", "(Delta x id)Delta = (id x Delta)Delta", [&] { return check_coassociativity(*A, words); });
        run.add(id + "/counit", "(eps x id)Delta = id = (id x eps)Delta", [&] { return check_counit(*A, words); });
        if (A->has_antipode())
            run.add(id + "/antipode", "m(S x id)Delta = eps = m(id x S)Delta", [&] { return check_antipode_axioms(*A, words); });
    }
}

void det_suite(const SuiteOptions& o, Runner& run) {
    AlgebraPtr M = cached(AlgebraFamily::Mn, o.n);
    run.add("central", "det_q commutes with every generator of O_q(M_n)", [&] { return check_det_central(*M); });
    run.add("grouplike", "Delta(det_q) = det_q (x) det_q", [&] { return check_det_grouplike(*M); });
    run.add("row_column", "row and column permutation sums agree", [&] { return check_det_forms(*M); });
    run.add("laplace", "expansion along the first column equals det_q", [&] { return check_laplace_first_column(*M); });
    if (o.n <= 3) {
        run.add("sl_det_one", "det_q reduces to 1 in O_q(SL_n)", [&] {
            SubCheck c;
            auto S = cached(AlgebraFamily::SLn, o.n);
            ++c.checked;
            NcPoly d = qdet(S->pres());
            if (!S->pres().equal(d, NcPoly(Scalar(1)))) fail(c, S->pres().show(d));
            return c;
        });
        run.add("gl_det_inverse", "det_q det^-1 = det^-1 det_q = 1 in O_q(GL_n)", [&] {
            SubCheck c;
            auto G = cached(AlgebraFamily::GLn, o.n);
            const Presentation& P = G->pres();
            NcPoly d = qminor_free(P.descriptor(), range1(1, o.n), range1(1, o.n)), inv(detinv_());
            for (auto& x : {P.mul(d, inv), P.mul(inv, d)}) {
                ++c.checked;
                if (!P.equal(x, NcPoly(Scalar(1)))) fail(c, P.show(x));
            }
            return c;
        });
    }
}

void factorization_suite(const SuiteOptions& o, Runner& run) {
    run.add("mq", "J_1(p11 det_q(p_ab)) = det_q(a) in O_q(M_n)[d_1^-1]",
            [&] { return factorization_identity(o.n, AlgebraFamily::Mn); });
    if (o.n <= 3)
        run.add("slq", "J_1(p11 det_q(p_ab)) = det_q(a) = 1 in F(U_1)",
                [&] { return factorization_identity(o.n, AlgebraFamily::SLn); });
    else
        run.skip("slq", "J_1(p11 det_q(p_ab)) = det_q(a) in F(U_1)", "SL_n charts only for n <= 3");
}

void cleaving_suite(const SuiteOptions& o, Runner& run) {
    if (o.n > 3) {
        run.skip("all", "cleaving maps", "charts only for n <= 3");
        return;
    }
    for (int k : charts(o)) {
        CleavingMap j(o.n, k);
        std::vector<SubCheck> subs;
        run.addr(kid(k) + "/relations", "every relation of O_q(P), incl. p11 det_q(p_ab) = 1, maps to 0", [&] {
            subs = verify_cleaving(j, o.seed);
            return from_sub(kid(k) + "/relations", "every relation of O_q(P), incl. p11 det_q(p_ab) = 1, maps to 0", subs[0]);
        });
        if (subs.size() == 3) {
            run.add(kid(k) + "/comodule", "delta o j = (j x id) o Delta on words of length <= 2", [&] { return subs[1]; });
            run.add(kid(k) + "/convolution", "j * (j o S) = eps = (j o S) * j on sampled words", [&] { return subs[2]; });
        }
        run.add(kid(k) + "/tau_trivial", "tau(h,g) = eps(h) eps(g) on generator pairs", [&] {
            SubCheck c;
            CrossedCocycle t = crossed_cocycle(j, j.chart());
            c.checked = t.values.size();
            if (!t.trivial) fail(c, t.witness);
            if (!t.coinvariant) fail(c, "tau not coinvariant");
            return c;
        });
        run.add(kid(k) + "/smash_nontrivial", "some j(h) does not commute with some d_j d_k^-1",
                [&] { return smash_nontrivial(j); });
        if (o.n == 2 && k == 1)
            run.add(kid(k) + "/coaction_example", "delta(j(p[1,2])) = a[1,2] (x) p[1,1]^-1 + a[1,1] (x) p[1,2]", [&] {
                SubCheck c;
                ++c.checked;
                const LocalizedAlgebra& F = j.chart();
                TensorPoly want = TensorPoly::pure({NcPoly(a_(1, 2)), NcPoly(pinv_())});
                want += TensorPoly::pure({NcPoly(a_(1, 1)), NcPoly(p_(1, 2))});
                TensorPoly d = F.coaction(j(NcPoly(p_(1, 2))));
                d -= want;
                if (!F.tensor_is_zero(d, Legs{&j.P().pres()})) fail(c, format(d));
                return c;
            });
    }
}

void trivialization_suite(const SuiteOptions& o, int D, Runner& run) {
    if (o.n > 3) {
        run.skip("all", "trivialization", "charts only for n <= 3");
        return;
    }
    int Dt = std::min(D, 3);
    for (int k : charts(o)) {
        CleavingMap j(o.n, k);
        std::vector<SubCheck> subs;
        std::string st = "theta o Phi = id on d_k^-m w, m + |w| <= " + std::to_string(Dt);
        run.addr(kid(k) + "/theta_phi", st, [&] {
            subs = verify_trivialization(j, Dt);
            return from_sub(kid(k) + "/theta_phi", st, subs[0]);
        });
        if (subs.size() == 3) {
            run.add(kid(k) + "/phi_theta", "Phi(b j(h)) = b (x) h on coinvariant monomials times P words", [&] { return subs[1]; });
            run.add(kid(k) + "/coinvariant_leg", "first leg of Phi is coinvariant", [&] { return subs[2]; });
        }
        run.add(kid(k) + "/unit", "Phi(1) = 1 (x) 1", [&] {
            SubCheck c;
            ++c.checked;
            TensorPoly t = trivialize(j, NcPoly(Scalar(1)));
            t -= TensorPoly::pure({NcPoly(Scalar(1)), NcPoly(Scalar(1))});
            if (!j.chart().tensor_is_zero(t, Legs{&j.P().pres()})) fail(c, format(t));
            return c;
        });
    }
}

void canonical_suite(const SuiteOptions& o, int D, Runner& run) {
    if (o.n > 3) {
        run.skip("all", "canonical map", "charts only for n <= 3");
        return;
    }
    int Dc = std::min(D, 2);
    for (int k : charts(o)) {
        CleavingMap j(o.n, k);
        run.add(kid(k), "chi o chi~ = id on a (x) h, |a| + |h| <= " + std::to_string(Dc),
                [&] { return canonical_map_section(j, Dc); });
    }
}

void coinvariant_suite(const SuiteOptions& o, int D, Runner& run) {
    if (o.n > 3) {
        run.skip("all", "coinvariants", "charts only for n <= 3");
        return;
    }
    int L = std::min(D, o.n == 2 ? 4 : 3);
    for (int i : charts(o)) {
        std::string id = "i" + std::to_string(i);
        std::string st = "coinvariants among degree-0 words of length <= " + std::to_string(L) +
                         " = span of monomials in d_j d_i^-1";
        run.addr(id, st, [&] {
            CoinvariantReport c = coinvariants(AlgebraFamily::SLn, o.n, i, L, o.seed);
            CheckResult r;
            r.id = id;
            r.statement = st;
            r.status = c.pass ? Status::Pass : Status::Fail;
            r.witness = c.witness;
            r.cases = c.window;
            r.info["span_dim"] = std::to_string(c.span_dim);
            r.info["kernel_dim"] = std::to_string(c.kernel_dim);
            r.info["expected_dim"] = std::to_string(c.expected_dim);
            return r;
        });
    }
}

void sheaf_suite(const SuiteOptions& o, int D, Runner& run) {
    if (o.n > 3) {
        run.skip("all", "sheaf", "charts only for n <= 3");
        return;
    }
    SheafModel S(o.n);
    std::vector<SubCheck> subs;
    int Ds = std::min(D, 2);
    run.addr("functoriality", "r_JK o r_IJ = r_IK on generators for all chains", [&] {
        subs = verify_sheaf(S, Ds);
        return from_sub("functoriality", "r_JK o r_IJ = r_IK on generators for all chains", subs[0]);
    });
    if (subs.size() == 3) {
        run.add("comodule_morphism", "restrictions commute with the coactions", [&] { return subs[1]; });
        run.add("injective", "restrictions are injective up to degree " + std::to_string(Ds), [&] { return subs[2]; });
    }
    int Do = std::min(D, 3);
    for (auto& I : subsets(o.n, 2)) {
        std::string id = "order_" + std::to_string(I[0]) + std::to_string(I[1]);
        run.add(id, "localizing in either order gives the same numerators", [&] {
            OrderReport r = check_order_independence(AlgebraFamily::SLn, o.n, I, Do, o.seed);
            SubCheck c;
            c.pass = r.pass;
            c.witness = r.witness;
            c.checked = r.words;
            return c;
        });
    }
    run.add("charts", "one object per nonempty subset plus the global one", [&] {
        SubCheck c;
        ++c.checked;
        std::size_t want = (std::size_t(1) << o.n) - 1;
        if (S.charts().size() != want) fail(c, std::to_string(S.charts().size()) + " charts");
        return c;
    });
    if (o.n == 2) {
        int Dp = std::min(D, 3);
        std::string st = "degree <= " + std::to_string(Dp) + " part of O_q(SL_2) = pairs agreeing on U_12";
        run.addr("pullback", st, [&] {
            PullbackReport p = global_sections_pullback(Dp, o.seed);
            CheckResult r;
            r.id = "pullback";
            r.statement = st;
            r.status = p.pass ? Status::Pass : Status::Fail;
            r.witness = p.witness;
            r.info["equalizer_dim"] = std::to_string(p.equalizer_dim);
            r.info["global_dim"] = std::to_string(p.global_dim);
            return r;
        });
    }
}

void grassmannian_suite(const SuiteOptions& o, Runner& run) {
    for (int r = 1; r < o.n; ++r) {
        std::string id = "r" + std::to_string(r);
        run.add(id, "(id x pi)Delta(D_I) = D_I (x) pi(D_{1..r}) for every r-subset I", [&] {
            SubCheck c;
            for (auto& m : grassmannian_check(o.n, r)) {
                ++c.checked;
                if (!m.pass) fail(c, m.witness);
            }
            return c;
        });
    }
}

void twist_suite(const SuiteOptions& o, int D, Runner& run) {
    const int n = o.n;
    for (int m = 2; m <= std::max(4, n); ++m)
        run.add("projective_n" + std::to_string(m), "x_i o x_j = q^-1 g[i,j]^2 x_j o x_i",
                [&] { return check_projective_relation(m); });
    if (o.theta) {
        run.add("theta/cocycle", "cocycle identities for the given theta", [&] { return check_cocycle(*o.theta, o.seed); });
        run.add("theta/projective", "x_i o x_j = q^-1 gamma[i,j]^2 x_j o x_i for the given theta",
                [&] { return check_projective_relation(n, &*o.theta); });
    }
    AlgebraPtr M = cached(AlgebraFamily::Mn, n);
    auto words = sample_words(M->pres().generators(), 2, 30, o.seed);
    run.add("commute_mq", "(Gamma o Sigma) = (Sigma o Gamma) on O_q(M_n)",
            [&] { return check_twist_commute(M->pres(), o.theta ? *o.theta : CocycleSpec::generic(n), words); });
    run.add("hopf_mq", "twisted M_n: same coproduct, antipode-free bialgebra",
            [&] { return check_twisted_hopf(AlgebraFamily::Mn, n, 3, o.seed); });
    if (n > 3) {
        run.skip("theorems", "twist theorems on the bundle", "charts only for n <= 3");
        return;
    }
    for (auto [id, f] : std::vector<std::pair<std::string, AlgebraFamily>>{
             {"hopf_glq", AlgebraFamily::GLn}, {"hopf_slq", AlgebraFamily::SLn}, {"hopf_pq", AlgebraFamily::P}})
        run.add(id, "twisted Hopf algebra: same coproduct, antipode axioms in the twisted product",
                [&, f = f] { return check_twisted_hopf(f, n, 3, o.seed); });
    LocalizedPtr F = localized(AlgebraFamily::SLn, n, {1});
    std::vector<Letter> letters = F->base().pres().generators();
    letters.push_back(dinv_(1));
    auto fw = sample_words(letters, 2, 20, o.seed + 7);
    run.add("commute_chart", "(Gamma o Sigma) = (Sigma o Gamma) on F(U_1)",
            [&] { return check_twist_commute(*F, CocycleSpec::descended(n), fw); });

    std::map<std::string, std::string> statements{
        {"cocycle", "2-cocycle, bicharacter and normalization identities (shift-invariant cocycle)"},
        {"cocycle_generic", "2-cocycle, bicharacter and normalization identities (generic cocycle)"},
        {"shift_invariance", "gamma ignores shifts by (1,..,1)"},
        {"bicomodule_weights", "j_k preserves right torus weights, and left ones after relabelling rows by the chart"},
        {"twisted_cleaving", "(Gamma o Sigma)(j_k) preserves every relation of the twisted P"},
        {"twisted_inverse", "(a o d_i^-1) o d_i = a in the twisted chart"},
        {"sigma_tau_nontrivial", "tau of the Sigma-twisted chart is nontrivial for generic g"},
        {"sigma_tau_trivial_at_g1", "tau of the Sigma-twisted chart is trivial at g = 1"},
    };
    std::vector<SubCheck> subs;
    run.addr("theorems", "twist theorem checks ran", [&] {
        subs = verify_twist_theorems(n, std::min(D, 2), o.seed).checks;
        CheckResult r;
        r.id = "theorems";
        r.statement = "twist theorem checks ran";
        r.cases = subs.size();
        return r;
    });
    for (auto& s : subs) {
        // longest statement key that prefixes the name (names carry _k / _i suffixes)
        std::string st = s.name;
        std::size_t best = 0;
        for (auto& [key, text] : statements)
            if (key.size() > best && s.name.rfind(key, 0) == 0 &&
                (s.name.size() == key.size() || s.name[key.size()] == '_')) {
                best = key.size();
                st = text;
            }
        run.add(s.name, st, [&] { return s; });
    }
}

void classical_suite(const SuiteOptions& o, Runner& run) {
    const int n = o.n;
    std::vector<std::pair<std::string, std::function<AlgebraPtr()>>> algs{
        {"mq", [n] { return cached(AlgebraFamily::Mn, n); }},
        {"torus", [n] { return cached(AlgebraFamily::Torus, n); }},
        {"projq", [n] { return cached(AlgebraFamily::ProjectiveRing, n); }},
        {"projq_twisted", [n] { return twisted_projective(n); }},
        {"mq_g", [n] { return multiparametric(AlgebraFamily::Mn, n); }},
    };
    if (n <= 3)
        for (auto [id, f] : std::vector<std::pair<std::string, AlgebraFamily>>{
                 {"glq", AlgebraFamily::GLn}, {"slq", AlgebraFamily::SLn}, {"pq", AlgebraFamily::P}}) {
            algs.push_back({id, [n, f = f] { return cached(f, n); }});
            algs.push_back({id + "_g", [n, f = f] { return multiparametric(f, n); }});
        }
    for (auto& [id, make] : algs)
        run.add("commutative_" + id, "generators commute at q = " + o.q.get_str() + ", g = 1",
                [&, make = make] { return commutativity_sweep(make()->pres(), o.q); });
    if (n == 2)
        run.add("coaction_b", "delta(b) = b (x) t^-1 + a (x) p at q = " + o.q.get_str(), [&] {
            SubCheck c;
            ++c.checked;
            CleavingMap j(2, 1);
            const LocalizedAlgebra& F = j.chart();
            const Presentation& Pp = j.P().pres();
            TensorPoly d = F.coaction(NcPoly(a_(1, 2)));
            // reduce both legs, then specialize every coefficient
            TensorPoly got(2);
            for (auto& [key, v] : d.terms()) {
                NcPoly l0 = F.normal_form(NcPoly(key[0])), l1 = Pp.normal_form(NcPoly(key[1]));
                for (auto& [w0, c0] : l0.terms())
                    for (auto& [w1, c1] : l1.terms()) got.add({w0, w1}, (v * c0 * c1).specialize(o.q, true));
            }
            TensorPoly want = TensorPoly::pure({NcPoly(a_(1, 2)), NcPoly(pinv_())});
            want += TensorPoly::pure({NcPoly(a_(1, 1)), NcPoly(p_(1, 2))});
            if (!(got == want)) fail(c, format(got));
            return c;
        });
}

void negative_suite(const SuiteOptions& o, Runner& run) {
    const int n = o.n;
    AlgebraPtr M = cached(AlgebraFamily::Mn, n);
    std::size_t rules = M->pres().seed_rules().size();
    run.add("manin", "doubling any single Manin coefficient is detected", [&] {
        SubCheck c;
        for (std::size_t i = 0; i < rules; ++i) {
            ++c.checked;
            SubCheck r = manin_corruption(n, i);
            if (!r.pass) fail(c, r.witness);
        }
        return c;
    });
    if (n > 3) {
        run.skip("cleaving", "corrupted cleaving images", "charts only for n <= 3");
        return;
    }
    for (int k : charts(o)) {
        run.add(kid(k) + "/images", "doubling any single image of j_k fails verify_cleaving", [&] {
            SubCheck c;
            for (auto& l : cached(AlgebraFamily::P, n)->pres().generators()) {
                ++c.checked;
                SubCheck r = cleaving_corruption(n, k, l);
                if (!r.pass) fail(c, r.witness);
            }
            return c;
        });
        run.add(kid(k) + "/sign", "a stray -q on the rows above k and q on p[1,n] fails verify_cleaving", [&] {
            SubCheck c;
            ++c.checked;
            CleavingMap bad(n, k, AlgebraFamily::SLn, true);
            auto subs = verify_cleaving(bad, o.seed, true);
            bool caught = false;
            for (auto& s : subs)
                if (!s.pass && !s.witness.empty()) {
                    caught = true;
                    c.witness = s.name + ": " + s.witness;
                    break;
                }
            if (!caught) fail(c, "corrupted map passes every sub-check");
            c.pass = caught;
            return c;
        });
    }
}

}  // namespace

int default_degree(int n) { return n <= 2 ? 6 : n == 3 ? 4 : 3; }

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"confluence", "hopf", "det", "factorization", "cleaving", "trivialization",
                                                "canonical", "coinvariants", "sheaf", "grassmannian", "twist",
                                                "classical", "negative"};
    return names;
}

SuiteReport run_suite(const std::string& name, const SuiteOptions& o) {
    if (o.n < 2 || o.n > 4) throw std::invalid_argument("n must be 2, 3 or 4");
    if (o.k < 0 || o.k > o.n) throw std::invalid_argument("k out of range");
    SuiteReport rep;
    rep.suite = name;
    rep.n = o.n;
    rep.k = o.k;
    rep.degree = o.degree ? o.degree : default_degree(o.n);
    rep.seed = o.seed;
    rep.theta = o.theta_text;
    if (name == "all") {
        // One thread per suite; the algebra caches are shared and locked.
        std::vector<std::future<SuiteReport>> parts;
        for (auto& s : suite_names()) parts.push_back(std::async(std::launch::async, [&o, s] { return run_suite(s, o); }));
        for (auto& f : parts) rep.merge(f.get());
        rep.sort();
        return rep;
    }
    const int D = rep.degree;
    Runner run(rep);
    if (name == "confluence") confluence_suite(o, D, run);
    else if (name == "hopf") hopf_suite(o, run);
    else if (name == "det") det_suite(o, run);
    else if (name == "factorization") factorization_suite(o, run);
    else if (name == "cleaving") cleaving_suite(o, run);
    else if (name == "trivialization") trivialization_suite(o, D, run);
    else if (name == "canonical") canonical_suite(o, D, run);
    else if (name == "coinvariants") coinvariant_suite(o, D, run);
    else if (name == "sheaf") sheaf_suite(o, D, run);
    else if (name == "grassmannian") grassmannian_suite(o, run);
    else if (name == "twist") twist_suite(o, D, run);
    else if (name == "classical") classical_suite(o, run);
    else if (name == "negative") negative_suite(o, run);
    else throw std::invalid_argument("unknown suite: " + name);
    rep.sort();
    return rep;
}

// ---- shared checks ----

std::vector<Word> hopf_words(const Algebra& A, int L, std::size_t cap, std::uint64_t seed) {
    std::vector<Word> out;
    for (auto& g : A.pres().generators()) out.push_back({g});
    for (auto& w : sample_words(A.pres().generators(), L, cap, seed))
        if (w.size() > 1) out.push_back(w);
    return out;
}

SubCheck check_coassociativity(const Algebra& A, const std::vector<Word>& words) {
    SubCheck c("coassociativity");
    const Presentation& P = A.pres();
    auto delta = [&](const Word& w) { return A.coproduct(NcPoly(w)); };
    for (auto& w : words) {
        ++c.checked;
        TensorPoly d = A.coproduct(NcPoly(w));
        TensorPoly l = reduce3(expand_leg(d, 0, delta), P), r = reduce3(expand_leg(d, 1, delta), P);
        l -= r;
        if (!l.is_zero()) fail(c, format_word(w) + ": " + format(l));
    }
    return c;
}

SubCheck check_counit(const Algebra& A, const std::vector<Word>& words) {
    SubCheck c("counit");
    const Presentation& P = A.pres();
    for (auto& w : words) {
        ++c.checked;
        TensorPoly d = A.coproduct(NcPoly(w));
        NcPoly l, r;
        for (auto& [k, v] : d.terms()) {
            l += (v * A.counit(NcPoly(k[0]))) * NcPoly(k[1]);
            r += (v * A.counit(NcPoly(k[1]))) * NcPoly(k[0]);
        }
        NcPoly x(w);
        if (!P.equal(l, x)) fail(c, "(eps x id)Delta(" + format_word(w) + ") = " + P.show(P.normal_form(l)));
        if (!P.equal(r, x)) fail(c, "(id x eps)Delta(" + format_word(w) + ") = " + P.show(P.normal_form(r)));
    }
    return c;
}

SubCheck check_antipode_axioms(const Algebra& A, const std::vector<Word>& words) {
    SubCheck c("antipode");
    const Presentation& P = A.pres();
    for (auto& w : words) {
        ++c.checked;
        NcPoly x(w);
        TensorPoly d = A.coproduct(x);
        NcPoly e(A.counit(x)), l, r;
        for (auto& [k, v] : d.terms()) {
            l += v * P.mul(A.antipode(NcPoly(k[0])), NcPoly(k[1]));
            r += v * P.mul(NcPoly(k[0]), A.antipode(NcPoly(k[1])));
        }
        if (!P.equal(l, e)) fail(c, "m(S x id)Delta(" + format_word(w) + ") = " + P.show(P.normal_form(l)));
        if (!P.equal(r, e)) fail(c, "m(id x S)Delta(" + format_word(w) + ") = " + P.show(P.normal_form(r)));
    }
    return c;
}

SubCheck check_det_central(const Algebra& M) {
    SubCheck c("central");
    const Presentation& P = M.pres();
    NcPoly d = qdet(P);
    for (auto& g : P.generators()) {
        ++c.checked;
        NcPoly x = P.mul(d, NcPoly(g)) - P.mul(NcPoly(g), d);
        if (!P.is_zero(x)) fail(c, "[det, " + format_letter(g) + "] = " + P.show(P.normal_form(x)));
    }
    return c;
}

SubCheck check_det_grouplike(const Algebra& M) {
    SubCheck c("grouplike");
    const Presentation& P = M.pres();
    NcPoly d = qdet(P);
    ++c.checked;
    TensorPoly t = M.coproduct(d);
    t -= TensorPoly::pure({d, d});
    t = reduce_legs(t, {&P, &P});
    if (!t.is_zero()) fail(c, format(t));
    return c;
}

SubCheck check_det_forms(const Algebra& M) {
    SubCheck c("row_column");
    const Presentation& P = M.pres();
    const Descriptor& d = P.descriptor();
    const int n = M.n();
    std::vector<std::pair<std::vector<int>, std::vector<int>>> cases{{range1(1, n), range1(1, n)}};
    if (n > 2)
        for (auto& I : subsets(n, 2))
            for (auto& J : subsets(n, 2)) cases.push_back({I, J});
    for (auto& [I, J] : cases) {
        ++c.checked;
        NcPoly x = qminor_free(d, I, J) - qminor_free_columns(d, I, J);
        if (!P.is_zero(x)) fail(c, "minor rows/cols of size " + std::to_string(I.size()) + ": " + P.show(P.normal_form(x)));
    }
    return c;
}

SubCheck check_laplace_first_column(const Algebra& M) {
    SubCheck c("laplace");
    const Presentation& P = M.pres();
    const int n = M.n();
    NcPoly sum;
    for (int i = 1; i <= n; ++i) {
        std::vector<int> rows;
        for (int r = 1; r <= n; ++r)
            if (r != i) rows.push_back(r);
        Scalar sign = Scalar((i - 1) % 2 == 0 ? 1 : -1) * Scalar::q(1 - i);
        sum += sign * P.mul(NcPoly(a_(i, 1)), qminor(P, rows, range1(2, n)));
    }
    ++c.checked;
    NcPoly x = sum - qdet(P);
    if (!P.is_zero(x)) fail(c, P.show(P.normal_form(x)));
    return c;
}

SubCheck commutativity_sweep(const Presentation& P, const mpq_class& q_value) {
    SubCheck c("commutativity");
    auto& g = P.generators();
    for (std::size_t a = 0; a < g.size(); ++a)
        for (std::size_t b = a + 1; b < g.size(); ++b) {
            ++c.checked;
            NcPoly x = P.normal_form(NcPoly(Word{g[a], g[b]}) - NcPoly(Word{g[b], g[a]}));
            NcPoly y = x.map_scalars([&](const Scalar& s) { return s.specialize(q_value, true); });
            if (!y.is_zero())
                fail(c, format_letter(g[a]) + "*" + format_letter(g[b]) + " - " + format_letter(g[b]) + "*" +
                            format_letter(g[a]) + " = " + format(y));
        }
    return c;
}

SubCheck manin_corruption(int n, std::size_t index) {
    SubCheck c("manin_corruption");
    AlgebraSpec s;
    s.family = AlgebraFamily::Mn;
    s.n = n;
    s.corrupt = std::make_pair(index, Scalar(2));
    AlgebraPtr C = build(s);
    const Presentation& P = C->pres();
    const RewriteRule& r = P.seed_rules().at(index);
    ++c.checked;
    TensorPoly d = reduce_legs(C->coproduct(NcPoly(r.lhs) - r.rhs), {&P, &P});
    if (!d.is_zero()) {
        c.witness = "rule " + std::to_string(index) + ": Delta(" + format_word(r.lhs) + " - rhs) = " + format(d);
        if (c.witness.size() > 400) c.witness = c.witness.substr(0, 400) + "...";
        return c;
    }
    ConfluenceReport cr = P.check_confluence(3);
    if (!cr.pass) {
        c.witness = "rule " + std::to_string(index) + ": " + (cr.witnesses.empty() ? "unresolved overlap" : cr.witnesses[0]);
        return c;
    }
    fail(c, "rule " + std::to_string(index) + " corrupted but nothing detected it");
    return c;
}

SubCheck cleaving_corruption(int n, int k, const Letter& l) {
    SubCheck c("cleaving_corruption");
    CleavingMap j(n, k);
    j.override_image(l, Scalar(2) * j.image(l));
    ++c.checked;
    for (auto& s : verify_cleaving(j, 0, true))
        if (!s.pass && !s.witness.empty()) {
            c.witness = "j_" + std::to_string(k) + "(" + format_letter(l) + ") doubled: " + s.name + ": " + s.witness;
            return c;
        }
    fail(c, "j_" + std::to_string(k) + "(" + format_letter(l) + ") doubled but verify_cleaving passes");
    return c;
}

}  // namespace qpb
