#include "qpb/twist.hpp"

#include <algorithm>
#include <mutex>
#include <random>
#include <sstream>

namespace qpb {

namespace {

void fail(SubCheck& c, const std::string& w) {
    c.pass = false;
    if (c.witness.empty()) c.witness = w;
}

void add_letter(Weights& w, const Letter& l, int n) {
    auto bump = [&](Weight& v, int i, int e) {
        if (i < 1 || i > n) throw std::invalid_argument("letter index out of range: " + format_letter(l));
        v[i - 1] += e;
    };
    switch (l.fam) {
        case Family::A:
        case Family::P:
            bump(w.left, l.i, 1);
            bump(w.right, l.j, 1);
            break;
        case Family::InvD:
            bump(w.left, l.i, -1);
            bump(w.right, 1, -1);
            break;
        case Family::InvP11:
            bump(w.left, 1, -1);
            bump(w.right, 1, -1);
            break;
        case Family::T:
            bump(w.left, l.i, 1);
            bump(w.right, l.i, 1);
            break;
        case Family::InvT:
            bump(w.left, l.i, -1);
            bump(w.right, l.i, -1);
            break;
        case Family::InvDet:
            for (int i = 1; i <= n; ++i) {
                bump(w.left, i, -1);
                bump(w.right, i, -1);
            }
            break;
        case Family::X:
            bump(w.left, l.i, 1);
            bump(w.right, 1, 1);
            break;
    }
}

Weight add(Weight a, const Weight& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}

Weight neg(Weight a) {
    for (auto& x : a) x = -x;
    return a;
}

Scalar phase_of(TwistMode m, const CocycleSpec& s, const Weights& x, const Weights& y) {
    Scalar out(1);
    if (m != TwistMode::Gamma) out = out * eval_gamma(s, x.left, y.left);
    if (m != TwistMode::Sigma) out = out * eval_gamma(s, x.right, y.right).inverse();
    return out;
}

// Terms of p grouped by bi-weight.
std::map<std::pair<Weight, Weight>, NcPoly> by_weight(const NcPoly& p, int n) {
    std::map<std::pair<Weight, Weight>, NcPoly> out;
    for (auto& [w, c] : p.terms()) {
        Weights ws = weights(w, n);
        out[{ws.left, ws.right}].add(w, c);
    }
    return out;
}

std::vector<Weight> sample_weights(int n, std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Weight> out;
    out.push_back(Weight(n, 0));
    for (int i = 0; i < n; ++i) {
        Weight e(n, 0);
        e[i] = 1;
        out.push_back(e);
        out.push_back(neg(e));
    }
    while (out.size() < count) {
        Weight w(n);
        for (auto& x : w) x = static_cast<int>(rng() % 5) - 2;
        out.push_back(w);
    }
    return out;
}

std::string show_weight(const Weight& w) {
    std::string s = "(";
    for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + std::to_string(w[i]);
    return s + ")";
}

}  // namespace

Weights weights(const Word& w, int n) {
    Weights out{Weight(n, 0), Weight(n, 0)};
    for (auto& l : w) add_letter(out, l, n);
    return out;
}

Weight normalize(Weight w) {
    if (w.empty()) return w;
    int m = *std::min_element(w.begin(), w.end());
    for (auto& x : w) x -= m;
    return w;
}

CocycleSpec::CocycleSpec(int n) : n_(n) {
    if (n < 2) throw std::invalid_argument("cocycle needs n >= 2");
    for (int j = 1; j <= n; ++j)
        for (int k = j + 1; k <= n; ++k) g_[{j, k}] = Scalar(1);
}

CocycleSpec CocycleSpec::generic(int n) {
    CocycleSpec s(n);
    for (auto& [jk, v] : s.g_) v = Scalar::g(jk.first, jk.second);
    return s;
}

CocycleSpec CocycleSpec::descended(int n) {
    CocycleSpec s(n);
    for (auto& [jk, v] : s.g_)
        if (jk.first >= 2) v = Scalar::g(jk.first, jk.second);
    for (int k = 2; k <= n; ++k) {
        Scalar v(1);
        for (int m = 2; m <= n; ++m)
            if (m != k) v = v * s.gamma(k, m);
        s.g_[{1, k}] = v;
    }
    return s;
}

CocycleSpec CocycleSpec::trivial(int n) { return CocycleSpec(n); }

CocycleSpec CocycleSpec::from_theta(int n, const std::string& text) {
    CocycleSpec s(n);
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        std::istringstream ls(line);
        int j, k;
        std::string val, extra;
        if (!(ls >> j)) continue;
        if (!(ls >> k >> val) || (ls >> extra))
            throw std::invalid_argument("theta line " + std::to_string(lineno) + ": expected 'j k g^m'");
        if (j < 1 || k < 1 || j > n || k > n || j == k)
            throw std::invalid_argument("theta line " + std::to_string(lineno) + ": bad index pair");
        int m;
        if (val == "1") {
            m = 0;
        } else if (val == "g") {
            m = 1;
        } else if (val.rfind("g^", 0) == 0) {
            std::size_t used = 0;
            try {
                m = std::stoi(val.substr(2), &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used == 0 || used != val.size() - 2)
                throw std::invalid_argument("theta line " + std::to_string(lineno) + ": integer exponent expected");
        } else {
            throw std::invalid_argument("theta line " + std::to_string(lineno) + ": only g^m with integer m");
        }
        if (j > k) {
            std::swap(j, k);
            m = -m;
        }
        s.g_[{j, k}] = Scalar::g(j, k, m);
    }
    return s;
}

Scalar CocycleSpec::gamma(int j, int k) const {
    if (j == k) return Scalar(1);
    if (j > k) return g_.at({k, j}).inverse();
    return g_.at({j, k});
}

bool CocycleSpec::is_trivial() const {
    for (auto& [jk, v] : g_)
        if (!v.is_one()) return false;
    return true;
}

bool CocycleSpec::shift_invariant() const {
    Weight ones(n_, 1);
    for (int i = 0; i < n_; ++i) {
        Weight e(n_, 0);
        e[i] = 1;
        if (!eval_gamma(*this, ones, e).is_one()) return false;
    }
    return true;
}

std::string CocycleSpec::str() const {
    std::string s;
    for (auto& [jk, v] : g_) {
        if (!s.empty()) s += ", ";
        s += "gamma[" + std::to_string(jk.first) + "," + std::to_string(jk.second) + "] = " + v.str();
    }
    return s;
}

Scalar eval_gamma(const CocycleSpec& s, const Weight& u, const Weight& v) {
    const int n = s.n();
    if (static_cast<int>(u.size()) != n || static_cast<int>(v.size()) != n)
        throw std::invalid_argument("weight length does not match cocycle");
    Scalar out(1);
    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k) {
            int e = u[j] * v[k] - u[k] * v[j];
            if (e) out = out * s.gamma(j + 1, k + 1).pow(e);
        }
    return out;
}

std::string mode_name(TwistMode m) {
    switch (m) {
        case TwistMode::Gamma: return "gamma";
        case TwistMode::Sigma: return "sigma";
        case TwistMode::Both: return "both";
    }
    return "?";
}

TwistMode mode_from_name(const std::string& s) {
    if (s == "gamma") return TwistMode::Gamma;
    if (s == "sigma") return TwistMode::Sigma;
    if (s == "both") return TwistMode::Both;
    throw std::invalid_argument("unknown twist mode: " + s);
}

Scalar twist_phase(TwistMode m, const CocycleSpec& s, const Word& x, const Word& y) {
    return phase_of(m, s, weights(x, s.n()), weights(y, s.n()));
}

NcPoly twisted_product(const Ring& base, TwistMode m, const CocycleSpec& s, const NcPoly& a, const NcPoly& b) {
    // phases only depend on bi-weights, so multiply whole weight blocks
    auto A = by_weight(a, s.n()), B = by_weight(b, s.n());
    NcPoly out;
    for (auto& [wa, pa] : A)
        for (auto& [wb, pb] : B) {
            Scalar ph = phase_of(m, s, {wa.first, wa.second}, {wb.first, wb.second});
            out += ph * base.mul(pa, pb);
        }
    return out;
}

TwistedRing::TwistedRing(const Ring& base, TwistMode m, CocycleSpec s)
    : base_(&base), mode_(m), spec_(std::move(s)), name_(base.name() + "[" + mode_name(m) + "]") {}

NcPoly TwistedRing::mul(const NcPoly& a, const NcPoly& b) const {
    return twisted_product(*base_, mode_, spec_, a, b);
}

Scalar transport_factor(TwistMode m, const CocycleSpec& s, const Word& w) {
    Scalar out(1);
    Weights prefix = weights({}, s.n());
    for (auto& l : w) {
        Weights one = weights({l}, s.n());
        out = out * phase_of(m, s, prefix, one);
        prefix.left = add(prefix.left, one.left);
        prefix.right = add(prefix.right, one.right);
    }
    return out;
}

NcPoly to_twisted_words(TwistMode m, const CocycleSpec& s, const NcPoly& p) {
    NcPoly out;
    for (auto& [w, c] : p.terms()) out.add(w, c * transport_factor(m, s, w).inverse());
    return out;
}

NcPoly from_twisted_words(TwistMode m, const CocycleSpec& s, const NcPoly& p) {
    NcPoly out;
    for (auto& [w, c] : p.terms()) out.add(w, c * transport_factor(m, s, w));
    return out;
}

namespace {

void check_antipode(const Algebra& alg, const std::vector<Word>& words) {
    const Presentation& P = alg.pres();
    for (auto& w : words) {
        NcPoly x(w);
        TensorPoly d = alg.coproduct(x);
        NcPoly e(alg.counit(x)), left, right;
        for (auto& [k, c] : d.terms()) {
            left += c * P.mul(alg.antipode(NcPoly(k[0])), NcPoly(k[1]));
            right += c * P.mul(NcPoly(k[0]), alg.antipode(NcPoly(k[1])));
        }
        if (!P.equal_mod(left, e) || !P.equal_mod(right, e))
            throw std::logic_error("antipode axiom fails on " + format_word(w) + " in " + P.name());
    }
}

}  // namespace

AlgebraPtr build_multiparametric(AlgebraFamily f, int n, const CocycleSpec& s) {
    if (s.n() != n) throw std::invalid_argument("cocycle size does not match n");
    if ((f == AlgebraFamily::SLn || f == AlgebraFamily::P) && !s.shift_invariant())
        throw std::invalid_argument("this family needs a cocycle that ignores shifts by (1,..,1)");
    if (f == AlgebraFamily::Torus || f == AlgebraFamily::Parabolic)
        throw std::invalid_argument("no multiparametric version of " + family_name(f));
    AlgebraSpec us;
    us.family = f;
    us.n = n;
    AlgebraPtr base = cached(us);
    const Presentation& B = base->pres();
    const TwistMode m = TwistMode::Both;

    std::vector<RewriteRule> rules;
    for (auto& r : B.seed_rules()) {
        Scalar phi = transport_factor(m, s, r.lhs);
        RewriteRule t;
        t.lhs = r.lhs;
        for (auto& [v, c] : r.rhs.terms()) t.rhs.add(v, c * phi * transport_factor(m, s, v).inverse());
        rules.push_back(t);
    }
    Descriptor d = B.descriptor();
    d.name = family_name(f) == "projq" ? "O_q,g(P^" + std::to_string(n - 1) + ")"
                                       : B.name() + "_g";
    PresentationOptions po;
    po.complete = B.completing();
    po.budget = B.budget();
    po.min_degree = n + 1;
    auto pres = std::make_shared<Presentation>(d.name, B.generators(), rules, d, po);
    AlgebraSpec ts = us;
    ts.twist = true;
    auto alg = std::make_shared<Algebra>(ts, pres);
    if (base->has_coproduct()) {
        std::map<Letter, NcPoly> S;
        for (auto& [l, v] : base->antipode_table()) S.emplace(l, to_twisted_words(m, s, v));
        alg->set_hopf(base->coproduct_table(), base->counit_table(), std::move(S));
        if (alg->has_antipode()) {
            std::vector<Word> gens;
            for (auto& g : pres->generators()) gens.push_back({g});
            check_antipode(*alg, gens);
        }
    }
    return alg;
}

CocycleSpec default_cocycle(AlgebraFamily f, int n) {
    if (f == AlgebraFamily::SLn || f == AlgebraFamily::P) return CocycleSpec::descended(n);
    return CocycleSpec::generic(n);
}

AlgebraPtr multiparametric(AlgebraFamily f, int n) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, AlgebraPtr> cache;
    auto key = std::make_pair(static_cast<int>(f), n);
    {
        std::lock_guard lk(mu);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }
    AlgebraPtr a = build_multiparametric(f, n, default_cocycle(f, n));
    std::lock_guard lk(mu);
    return cache.emplace(key, a).first->second;
}

bool TwistReport::pass() const {
    for (auto& c : checks)
        if (!c.pass && !c.skip) return false;
    return true;
}

SubCheck check_cocycle(const CocycleSpec& s, std::uint64_t seed) {
    SubCheck c("cocycle");
    const int n = s.n();
    auto ws = sample_weights(n, 10 + 2 * n, seed);
    Weight zero(n, 0), ones(n, 1);
    auto eq = [&](const Scalar& a, const Scalar& b, const std::string& what) {
        ++c.checked;
        if (!(a == b)) fail(c, what + ": " + a.str() + " != " + b.str());
    };
    for (auto& u : ws) {
        eq(eval_gamma(s, zero, u), Scalar(1), "gamma(0," + show_weight(u) + ")");
        eq(eval_gamma(s, u, zero), Scalar(1), "gamma(" + show_weight(u) + ",0)");
        eq(eval_gamma(s, neg(u), u), Scalar(1), "gamma(-u,u), u = " + show_weight(u));
        eq(eval_gamma(s, u, neg(u)), Scalar(1), "gamma(u,-u), u = " + show_weight(u));
        for (auto& v : ws) {
            std::string uv = show_weight(u) + "," + show_weight(v);
            // inverse under convolution on group-likes
            eq(eval_gamma(s, u, v) * eval_gamma(s, neg(u), v), Scalar(1), "inverse at " + uv);
            for (auto& w : ws) {
                std::string uvw = uv + "," + show_weight(w);
                eq(eval_gamma(s, u, v) * eval_gamma(s, add(u, v), w),
                   eval_gamma(s, v, w) * eval_gamma(s, u, add(v, w)), "2-cocycle at " + uvw);
                eq(eval_gamma(s, add(u, v), w), eval_gamma(s, u, w) * eval_gamma(s, v, w),
                   "left additivity at " + uvw);
                eq(eval_gamma(s, w, add(u, v)), eval_gamma(s, w, u) * eval_gamma(s, w, v),
                   "right additivity at " + uvw);
            }
        }
    }
    return c;
}

namespace {

// Shifting either argument by (1,..,1), exhaustively on exponents in [-1,1].
SubCheck check_shift(const CocycleSpec& s) {
    SubCheck c("shift_invariance");
    const int n = s.n();
    Weight ones(n, 1);
    std::vector<Weight> all{Weight(n, -1)};
    for (;;) {
        Weight w = all.back();
        int i = 0;
        while (i < n && w[i] == 1) w[i++] = -1;
        if (i == n) break;
        ++w[i];
        all.push_back(w);
    }
    for (auto& u : all)
        for (auto& v : all) {
            ++c.checked;
            Scalar g = eval_gamma(s, u, v);
            if (!(eval_gamma(s, add(u, ones), v) == g) || !(eval_gamma(s, u, add(v, ones)) == g))
                fail(c, "shift changes gamma" + show_weight(u) + show_weight(v));
        }
    return c;
}

// P row alpha -> A row of chart k (alpha = 1 goes to k).
int chart_row(int alpha, int k) {
    if (alpha == 1) return k;
    return alpha <= k ? alpha - 1 : alpha;
}

}  // namespace

SubCheck check_bicomodule_weights(const CleavingMap& j, bool chart_adapted) {
    SubCheck c(chart_adapted ? "weights_chart_adapted" : "bicomodule_weights");
    const int n = j.n();
    for (auto& [l, img] : j.table()) {
        ++c.checked;
        Weights src = weights({l}, n);
        if (chart_adapted) {
            Weight moved(n, 0);
            for (int a = 1; a <= n; ++a) moved[chart_row(a, j.k()) - 1] += src.left[a - 1];
            src.left = moved;
        }
        for (auto& [w, coef] : img.terms()) {
            Weights tw = weights(w, n);
            if (normalize(tw.left) != normalize(src.left) || normalize(tw.right) != normalize(src.right)) {
                fail(c, format_letter(l) + " has weights " + show_weight(src.left) + show_weight(src.right) +
                            " but j_" + std::to_string(j.k()) + " term " + format_word(w) + " has " +
                            show_weight(tw.left) + show_weight(tw.right));
                break;
            }
        }
    }
    return c;
}

SubCheck check_twisted_cleaving(const CleavingMap& j, const CocycleSpec& s) {
    SubCheck c("twisted_cleaving");
    AlgebraPtr Pg = build_multiparametric(AlgebraFamily::P, j.n(), s);
    TwistedRing T(j.chart(), TwistMode::Both, s);
    AlgebraMap J(T, [&](const Letter& l) { return j.image(l); });
    std::vector<NcPoly> rels = Pg->pres().defining_relations();
    for (auto& r : Pg->pres().rules()) rels.push_back(NcPoly(r.lhs) - r.rhs);
    for (auto& r : rels) {
        ++c.checked;
        NcPoly img = J(r);
        if (!T.is_zero(img)) fail(c, format(r) + " -> " + T.show(T.normal_form(img)));
    }
    return c;
}

SubCheck check_twisted_inverse(int n, int i, const CocycleSpec& s, int D, std::uint64_t seed) {
    SubCheck c("twisted_inverse");
    LocalizedPtr F = localized(AlgebraFamily::SLn, n, {i});
    TwistedRing T(*F, TwistMode::Both, s);
    NcPoly di(a_(i, 1)), dinv(dinv_(i));
    auto check = [&](const NcPoly& got, const NcPoly& want, const std::string& what) {
        ++c.checked;
        if (!T.equal(got, want)) fail(c, what + " -> " + T.show(T.normal_form(got)));
    };
    check(T.mul(dinv, di), NcPoly(Scalar(1)), "d[" + std::to_string(i) + "]^-1 o d[" + std::to_string(i) + "]");
    check(T.mul(di, dinv), NcPoly(Scalar(1)), "d[" + std::to_string(i) + "] o d[" + std::to_string(i) + "]^-1");
    std::vector<Letter> letters = F->base().pres().generators();
    letters.push_back(dinv_(i));
    for (auto& w : sample_words(letters, D, 60, seed)) {
        NcPoly a = F->normal_form(NcPoly(w));
        check(T.mul(T.mul(a, dinv), di), a, "(" + format_word(w) + " o d^-1) o d");
        check(T.mul(T.mul(a, di), dinv), a, "(" + format_word(w) + " o d) o d^-1");
    }
    return c;
}

SubCheck check_projective_relation(int n, const CocycleSpec* spec) {
    SubCheck c("projective_relation");
    AlgebraPtr base = cached(AlgebraFamily::ProjectiveRing, n);
    CocycleSpec s = spec ? *spec : CocycleSpec::generic(n);
    TwistedRing T(base->pres(), TwistMode::Both, s);
    AlgebraPtr transported = build_multiparametric(AlgebraFamily::ProjectiveRing, n, s);
    AlgebraSpec ps;
    ps.family = AlgebraFamily::ProjectiveRing;
    ps.n = n;
    ps.twist = true;
    AlgebraPtr direct = cached(ps);
    for (int i = 1; i <= n; ++i)
        for (int k = i + 1; k <= n; ++k) {
            NcPoly xi(x_(i)), xk(x_(k));
            Scalar coef = Scalar::q(-1) * s.gamma(i, k).pow(2);
            std::string tag = "x[" + std::to_string(i) + "] o x[" + std::to_string(k) + "]";
            ++c.checked;
            NcPoly lhs = T.mul(xi, xk) - coef * T.mul(xk, xi);
            if (!T.is_zero(lhs)) fail(c, tag + ": twisted product leaves " + T.show(T.normal_form(lhs)));
            NcPoly rel = NcPoly(Word{x_(i), x_(k)}) - coef * NcPoly(Word{x_(k), x_(i)});
            ++c.checked;
            if (!transported->pres().is_zero(rel))
                fail(c, tag + ": transported presentation leaves " + transported->pres().show(transported->pres().normal_form(rel)));
            if (spec) continue;  // the built ring carries g[i,k] itself
            ++c.checked;
            if (!direct->pres().is_zero(rel))
                fail(c, tag + ": built presentation leaves " + direct->pres().show(direct->pres().normal_form(rel)));
        }
    return c;
}

SubCheck check_twist_commute(const Ring& base, const CocycleSpec& s, const std::vector<Word>& words) {
    SubCheck c("gamma_sigma_commute");
    TwistedRing G(base, TwistMode::Gamma, s), S(base, TwistMode::Sigma, s), B(base, TwistMode::Both, s);
    TwistedRing GS(S, TwistMode::Gamma, s), SG(G, TwistMode::Sigma, s);
    for (auto& x : words)
        for (auto& y : words) {
            ++c.checked;
            NcPoly a = GS.mul(NcPoly(x), NcPoly(y)), b = SG.mul(NcPoly(x), NcPoly(y));
            if (!base.equal(a, b) || !base.equal(a, B.mul(NcPoly(x), NcPoly(y))))
                fail(c, format_word(x) + " o " + format_word(y) + ": " + base.show(a) + " vs " + base.show(b));
        }
    return c;
}

SubCheck check_twisted_hopf(AlgebraFamily f, int n, int L, std::uint64_t seed) {
    SubCheck c("twisted_hopf");
    AlgebraPtr M = multiparametric(f, n);
    AlgebraPtr U = cached(f, n);
    CocycleSpec s = default_cocycle(f, n);
    const Presentation& Mp = M->pres();
    const Presentation& Up = U->pres();
    auto words = sample_words(Mp.generators(), L, 60, seed);
    auto untwist = [&](const TensorPoly& t) {
        TensorPoly out(t.rank());
        for (auto& [k, v] : t.terms()) {
            Scalar ph = v;
            for (auto& w : k) ph = ph * transport_factor(TwistMode::Both, s, w);
            out.add(k, ph);
        }
        return out;
    };
    for (auto& w : words) {
        NcPoly x(w);
        // the coalgebra is untouched: Delta(w) read back in the plain model
        ++c.checked;
        TensorPoly tw = untwist(M->coproduct(x));
        TensorPoly plain = transport_factor(TwistMode::Both, s, w) * U->coproduct(x);
        TensorPoly diff = reduce_legs(tw, {&Up, &Up});
        diff -= reduce_legs(plain, {&Up, &Up});
        if (!reduce_legs(diff, {&Up, &Up}).is_zero()) fail(c, "coproduct of " + format_word(w) + " changed");
        if (!M->has_antipode()) continue;
        ++c.checked;
        try {
            check_antipode(*M, {w});
        } catch (const std::logic_error& e) {
            fail(c, e.what());
        }
    }
    return c;
}

CrossedCocycle sigma_crossed_cocycle(const CleavingMap& j, const CocycleSpec& s) {
    TwistedRing T(j.chart(), TwistMode::Sigma, s);
    return crossed_cocycle(j, T);
}

TwistReport verify_twist_theorems(int n, int D, std::uint64_t seed) {
    TwistReport rep;
    rep.n = n;
    CocycleSpec s = CocycleSpec::descended(n);

    SubCheck coc = check_cocycle(s, seed);
    SubCheck gen = check_cocycle(CocycleSpec::generic(n), seed);
    gen.name = "cocycle_generic";
    rep.checks.push_back(coc);
    rep.checks.push_back(gen);
    rep.checks.push_back(check_shift(s));

    for (int k = 1; k <= n; ++k) {
        CleavingMap j(n, k);
        std::string sfx = "_k" + std::to_string(k);
        // Rows of P land on rows of A through the chart's row map, so the left
        // weights are compared after that relabelling; the raw comparison only
        // holds for k = 1 and is kept as a note.
        SubCheck w = check_bicomodule_weights(j, true);
        w.name = "bicomodule_weights" + sfx;
        SubCheck raw = check_bicomodule_weights(j, false);
        w.note = raw.pass ? "raw weights agree" : "raw weights differ: " + raw.witness;
        rep.checks.push_back(w);
        SubCheck tc = check_twisted_cleaving(j, s);
        tc.name += sfx;
        rep.checks.push_back(tc);
    }
    for (int i = 1; i <= n; ++i) {
        SubCheck t = check_twisted_inverse(n, i, s, D, seed + i);
        t.name += "_i" + std::to_string(i);
        rep.checks.push_back(t);
    }

    SubCheck tau("sigma_tau_nontrivial"), tau1("sigma_tau_trivial_at_g1");
    std::string seen;
    for (int k = 1; k <= n; ++k) {
        CleavingMap j(n, k);
        CrossedCocycle t = sigma_crossed_cocycle(j, s);
        ++tau.checked;
        if (!t.trivial && seen.empty()) seen = "k=" + std::to_string(k) + ": " + t.witness;
        if (!t.coinvariant) fail(tau, "tau not coinvariant in chart " + std::to_string(k));
        CrossedCocycle t1 = sigma_crossed_cocycle(j, s.at_one());
        ++tau1.checked;
        if (!t1.trivial) fail(tau1, "k=" + std::to_string(k) + ": " + t1.witness);
    }
    if (s.is_trivial()) {
        tau.skip = true;
        tau.witness = "no nontrivial shift-invariant cocycle for n = " + std::to_string(n);
    } else if (seen.empty()) {
        fail(tau, "tau trivial in every chart");
    }
    rep.checks.push_back(tau);
    rep.checks.push_back(tau1);
    return rep;
}

}  // namespace qpb
