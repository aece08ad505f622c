#include "qpb/algebras.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <tuple>

namespace qpb {

std::string family_name(AlgebraFamily f) {
    switch (f) {
        case AlgebraFamily::Mn: return "mq";
        case AlgebraFamily::GLn: return "glq";
        case AlgebraFamily::SLn: return "slq";
        case AlgebraFamily::P: return "pq";
        case AlgebraFamily::Torus: return "torus";
        case AlgebraFamily::ProjectiveRing: return "projq";
        case AlgebraFamily::Parabolic: return "parq";
    }
    return "?";
}

AlgebraFamily family_from_name(const std::string& s) {
    for (auto f : {AlgebraFamily::Mn, AlgebraFamily::GLn, AlgebraFamily::SLn, AlgebraFamily::P, AlgebraFamily::Torus,
                   AlgebraFamily::ProjectiveRing, AlgebraFamily::Parabolic})
        if (family_name(f) == s) return f;
    throw std::invalid_argument("unknown algebra '" + s + "' (expected mq, glq, slq, pq, torus, projq, parq)");
}

std::vector<int> range1(int lo, int hi) {
    std::vector<int> v;
    for (int i = lo; i <= hi; ++i) v.push_back(i);
    return v;
}

std::vector<std::vector<int>> subsets(int n, int size) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int start) {
        if (static_cast<int>(cur.size()) == size) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i <= n; ++i) {
            cur.push_back(i);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(1);
    return out;
}

std::optional<Letter> entry(const Descriptor& d, int i, int j) {
    if (d.families.count(Family::A)) return a_(i, j);
    if (d.families.count(Family::P)) {
        Letter l = p_(i, j);
        if (d.admits(l)) return l;
        return std::nullopt;
    }
    throw std::invalid_argument("descriptor " + d.name + " has no matrix entries");
}

namespace {

int inversions(const std::vector<int>& perm) {
    int c = 0;
    for (std::size_t a = 0; a < perm.size(); ++a)
        for (std::size_t b = a + 1; b < perm.size(); ++b)
            if (perm[a] > perm[b]) ++c;
    return c;
}

// (-q)^e
Scalar mq_pow(int e) { return Scalar(e % 2 == 0 ? 1 : -1) * Scalar::q(e); }

void check_indices(const std::vector<int>& rows, const std::vector<int>& cols) {
    if (rows.size() != cols.size()) throw std::invalid_argument("minor: row and column counts differ");
    for (std::size_t t = 1; t < rows.size(); ++t)
        if (rows[t] <= rows[t - 1] || cols[t] <= cols[t - 1])
            throw std::invalid_argument("minor: indices must be strictly increasing");
}

NcPoly minor_sum(const Descriptor& d, const std::vector<int>& rows, const std::vector<int>& cols, bool on_rows) {
    check_indices(rows, cols);
    NcPoly out;
    std::vector<int> perm(rows.size());
    std::iota(perm.begin(), perm.end(), 0);
    do {
        Word w;
        bool zero = false;
        for (std::size_t t = 0; t < perm.size() && !zero; ++t) {
            int i = on_rows ? rows[perm[t]] : rows[t];
            int j = on_rows ? cols[t] : cols[perm[t]];
            auto l = entry(d, i, j);
            if (!l)
                zero = true;
            else
                w.push_back(*l);
        }
        if (!zero) out.add(w, mq_pow(-inversions(perm)));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

Descriptor make_descriptor(const AlgebraSpec& s) {
    Descriptor d;
    d.n = s.n;
    switch (s.family) {
        case AlgebraFamily::Mn:
            d.name = "O_q(M_" + std::to_string(s.n) + ")";
            d.families = {Family::A};
            break;
        case AlgebraFamily::GLn:
            d.name = "O_q(GL_" + std::to_string(s.n) + ")";
            d.families = {Family::A, Family::InvDet};
            break;
        case AlgebraFamily::SLn:
            d.name = "O_q(SL_" + std::to_string(s.n) + ")";
            d.families = {Family::A};
            break;
        case AlgebraFamily::P:
            d.name = "O_q(P_" + std::to_string(s.n) + ")";
            d.families = {Family::P, Family::InvP11};
            d.parabolic_r = 1;
            break;
        case AlgebraFamily::Parabolic:
            d.name = "O_q(M_" + std::to_string(s.n) + ")/I_" + std::to_string(s.r);
            d.families = {Family::P};
            d.parabolic_r = s.r;
            break;
        case AlgebraFamily::Torus:
            d.name = "O(T_" + std::to_string(s.n) + ")";
            d.families = {Family::T, Family::InvT};
            break;
        case AlgebraFamily::ProjectiveRing:
            d.name = std::string(s.twist ? "O_q,g" : "O_q") + "(P^" + std::to_string(s.n - 1) + ")";
            d.families = {Family::X};
            break;
    }
    return d;
}

// Matrix entries in row-major order, zero entries skipped.
std::vector<Letter> matrix_letters(const Descriptor& d) {
    std::vector<Letter> out;
    for (int i = 1; i <= d.n; ++i)
        for (int j = 1; j <= d.n; ++j)
            if (auto l = entry(d, i, j)) out.push_back(*l);
    return out;
}

// Manin relations oriented larger*smaller -> ..., with killed entries zero.
std::vector<RewriteRule> manin_rules(const Descriptor& d) {
    std::vector<RewriteRule> out;
    const int n = d.n;
    const Scalar c = Scalar::q(-1) - Scalar::q(1);
    for (int k = 1; k <= n; ++k)
        for (int l = 1; l <= n; ++l)
            for (int i = 1; i <= k; ++i)
                for (int j = 1; j <= n; ++j) {
                    if (i == k && j >= l) continue;  // need (i,j) < (k,l) row-major
                    auto x = entry(d, k, l), y = entry(d, i, j);
                    if (!x || !y) continue;
                    RewriteRule r;
                    r.lhs = {*x, *y};
                    if (l == j || k == i) {
                        r.rhs = NcPoly(Word{*y, *x}, Scalar::q(1));
                    } else if (l < j) {
                        r.rhs = NcPoly(Word{*y, *x});
                    } else {
                        r.rhs = NcPoly(Word{*y, *x});
                        auto u = entry(d, i, l), v = entry(d, k, j);
                        if (u && v) r.rhs.add(Word{*u, *v}, -c);
                    }
                    out.push_back(std::move(r));
                }
    return out;
}

// lhs -> (value - (poly - lead))/coeff(lead) for the relation poly = value,
// where lead is the largest word in the generator order.
RewriteRule solve_for(const NcPoly& poly, const NcPoly& value, const Word& lead) {
    Scalar c = poly.coeff(lead);
    if (c.is_zero()) throw std::logic_error("leading word missing from relation");
    NcPoly rest = poly - NcPoly(lead, c);
    RewriteRule r;
    r.lhs = lead;
    r.rhs = c.inverse() * (value - rest);
    return r;
}

Word antidiagonal(const Descriptor& d, int from) {
    Word w;
    for (int t = from; t <= d.n; ++t) w.push_back(*entry(d, t, d.n + from - t));
    return w;
}

std::map<Letter, TensorPoly> matrix_coproduct(const Descriptor& d) {
    std::map<Letter, TensorPoly> out;
    for (int i = 1; i <= d.n; ++i)
        for (int j = 1; j <= d.n; ++j) {
            auto x = entry(d, i, j);
            if (!x) continue;
            TensorPoly t(2);
            for (int k = 1; k <= d.n; ++k) {
                auto u = entry(d, i, k), v = entry(d, k, j);
                if (u && v) t.add({Word{*u}, Word{*v}}, Scalar(1));
            }
            out.emplace(*x, t);
        }
    return out;
}

std::map<Letter, Scalar> matrix_counit(const Descriptor& d) {
    std::map<Letter, Scalar> out;
    for (auto& l : matrix_letters(d)) out.emplace(l, Scalar(l.i == l.j ? 1 : 0));
    return out;
}

// Quantum cofactor formula for S(entry(i,j)).
NcPoly cofactor(const Descriptor& d, int i, int j) {
    std::vector<int> rows, cols;
    for (int t = 1; t <= d.n; ++t) {
        if (t != j) rows.push_back(t);
        if (t != i) cols.push_back(t);
    }
    NcPoly m = rows.empty() ? NcPoly(Scalar(1)) : minor_sum(d, rows, cols, false);
    return mq_pow(j - i) * m;
}

TensorPoly group_like(const Letter& l) {
    TensorPoly t(2);
    t.add({Word{l}, Word{l}}, Scalar(1));
    return t;
}

void verify_antipode(const Algebra& alg) {
    const Presentation& P = alg.pres();
    for (auto& g : P.generators()) {
        NcPoly x(g);
        TensorPoly d = alg.coproduct(x);
        NcPoly e(alg.counit(x));
        NcPoly left, right;
        for (auto& [k, c] : d.terms()) {
            left += c * P.mul(alg.antipode(NcPoly(k[0])), NcPoly(k[1]));
            right += c * P.mul(NcPoly(k[0]), alg.antipode(NcPoly(k[1])));
        }
        if (!P.equal_mod(left, e) || !P.equal_mod(right, e))
            throw std::logic_error("antipode axiom fails on " + format_letter(g) + " in " + P.name());
    }
}

}  // namespace

NcPoly qminor_free(const Descriptor& d, const std::vector<int>& rows, const std::vector<int>& cols) {
    return minor_sum(d, rows, cols, false);
}

NcPoly qminor_free_columns(const Descriptor& d, const std::vector<int>& rows, const std::vector<int>& cols) {
    return minor_sum(d, rows, cols, true);
}

NcPoly qminor(const Ring& ring, const std::vector<int>& rows, const std::vector<int>& cols) {
    return ring.normal_form(qminor_free(ring.descriptor(), rows, cols));
}

NcPoly qdet(const Ring& ring) {
    auto all = range1(1, ring.descriptor().n);
    return qminor(ring, all, all);
}

Algebra::Algebra(AlgebraSpec spec, std::shared_ptr<const Presentation> pres)
    : spec_(std::move(spec)), pres_(std::move(pres)) {}

void Algebra::set_hopf(std::map<Letter, TensorPoly> delta, std::map<Letter, Scalar> eps,
                       std::map<Letter, NcPoly> antipode) {
    delta_table_ = std::move(delta);
    eps_table_ = std::move(eps);
    antipode_table_ = std::move(antipode);
    const Presentation* P = pres_.get();
    delta_ = std::make_unique<TensorAlgebraMap>(Legs{P, P}, [this](const Letter& l) {
        auto it = delta_table_.find(l);
        if (it == delta_table_.end()) throw std::invalid_argument("no coproduct for " + format_letter(l));
        return it->second;
    });
    if (!antipode_table_.empty())
        antipode_ = std::make_unique<AlgebraMap>(
            *P,
            [this](const Letter& l) {
                auto it = antipode_table_.find(l);
                if (it == antipode_table_.end()) throw std::invalid_argument("no antipode for " + format_letter(l));
                return it->second;
            },
            true);
}

TensorPoly Algebra::coproduct(const NcPoly& p) const {
    if (!delta_) throw std::invalid_argument(name() + " has no coproduct");
    return (*delta_)(p);
}

Scalar Algebra::counit(const NcPoly& p) const {
    if (eps_table_.empty()) throw std::invalid_argument(name() + " has no counit");
    Scalar out;
    for (auto& [w, c] : p.terms()) {
        Scalar v = c;
        for (auto& l : w) {
            auto it = eps_table_.find(l);
            if (it == eps_table_.end()) throw std::invalid_argument("no counit for " + format_letter(l));
            v = v * it->second;
            if (v.is_zero()) break;
        }
        out += v;
    }
    return out;
}

NcPoly Algebra::antipode(const NcPoly& p) const {
    if (!antipode_) throw std::invalid_argument(name() + " has no antipode");
    return (*antipode_)(p);
}

AlgebraPtr build(const AlgebraSpec& spec, PresentationOptions opts) {
    if (spec.n < 2) throw std::invalid_argument("n must be at least 2");
    if (spec.n > 9) throw std::invalid_argument("n must be at most 9");
    if (spec.family == AlgebraFamily::Parabolic && (spec.r < 1 || spec.r >= spec.n))
        throw std::invalid_argument("r must satisfy 1 <= r < n");
    Descriptor d = make_descriptor(spec);
    const int n = spec.n;
    std::vector<Letter> gens;
    std::vector<RewriteRule> rules;
    std::map<Letter, TensorPoly> delta;
    std::map<Letter, Scalar> eps;
    std::map<Letter, NcPoly> S;
    bool hopf = true;
    bool complete = true;

    switch (spec.family) {
        case AlgebraFamily::Mn:
        case AlgebraFamily::SLn:
        case AlgebraFamily::GLn: {
            gens = matrix_letters(d);
            rules = manin_rules(d);
            delta = matrix_coproduct(d);
            eps = matrix_counit(d);
            NcPoly det = qminor_free(d, range1(1, n), range1(1, n));
            Word lead = antidiagonal(d, 1);
            if (spec.family == AlgebraFamily::Mn) {
                complete = false;
            } else if (spec.family == AlgebraFamily::SLn) {
                rules.push_back(solve_for(det, NcPoly(Scalar(1)), lead));
                for (int i = 1; i <= n; ++i)
                    for (int j = 1; j <= n; ++j) S.emplace(a_(i, j), cofactor(d, i, j));
            } else {
                Letter inv = detinv_();
                gens.push_back(inv);
                for (auto& g : matrix_letters(d)) {
                    RewriteRule r;
                    r.lhs = {inv, g};
                    r.rhs = NcPoly(Word{g, inv});
                    rules.push_back(r);
                }
                Word lw = lead;
                lw.push_back(inv);
                rules.push_back(solve_for(det * NcPoly(inv), NcPoly(Scalar(1)), lw));
                delta.emplace(inv, group_like(inv));
                eps.emplace(inv, Scalar(1));
                for (int i = 1; i <= n; ++i)
                    for (int j = 1; j <= n; ++j) S.emplace(a_(i, j), cofactor(d, i, j) * NcPoly(inv));
                S.emplace(inv, det);
            }
            break;
        }
        case AlgebraFamily::P: {
            auto mats = matrix_letters(d);
            gens.push_back(p_(1, 1));
            gens.push_back(pinv_());
            for (auto& l : mats)
                if (l != p_(1, 1)) gens.push_back(l);
            rules = manin_rules(d);
            // y p11 = mu p11 y  gives  y p11^-1 = mu^-1 p11^-1 y.
            for (auto& y : mats) {
                if (y == p_(1, 1)) continue;
                Scalar mu = y.i == 1 ? Scalar::q(1) : Scalar(1);
                RewriteRule r;
                r.lhs = {y, pinv_()};
                r.rhs = NcPoly(Word{pinv_(), y}, mu.inverse());
                rules.push_back(r);
            }
            rules.push_back({Word{p_(1, 1), pinv_()}, NcPoly(Scalar(1))});
            rules.push_back({Word{pinv_(), p_(1, 1)}, NcPoly(Scalar(1))});
            NcPoly sub = qminor_free(d, range1(2, n), range1(2, n));
            Word lead{p_(1, 1)};
            for (auto& l : antidiagonal(d, 2)) lead.push_back(l);
            rules.push_back(solve_for(NcPoly(p_(1, 1)) * sub, NcPoly(Scalar(1)), lead));
            delta = matrix_coproduct(d);
            delta.emplace(pinv_(), group_like(pinv_()));
            eps = matrix_counit(d);
            eps.emplace(pinv_(), Scalar(1));
            for (auto& l : mats) S.emplace(l, cofactor(d, l.i, l.j));
            S.emplace(pinv_(), NcPoly(p_(1, 1)));
            break;
        }
        case AlgebraFamily::Parabolic: {
            gens = matrix_letters(d);
            rules = manin_rules(d);
            delta = matrix_coproduct(d);
            eps = matrix_counit(d);
            break;
        }
        case AlgebraFamily::Torus: {
            for (int i = 1; i <= n; ++i) {
                gens.push_back(t_(i));
                gens.push_back(tinv_(i));
            }
            for (std::size_t a = 0; a < gens.size(); ++a)
                for (std::size_t b = 0; b < a; ++b) {
                    if (gens[a].i == gens[b].i) continue;
                    rules.push_back({Word{gens[a], gens[b]}, NcPoly(Word{gens[b], gens[a]})});
                }
            Word all;
            for (int i = 1; i <= n; ++i) {
                rules.push_back({Word{t_(i), tinv_(i)}, NcPoly(Scalar(1))});
                rules.push_back({Word{tinv_(i), t_(i)}, NcPoly(Scalar(1))});
                all.push_back(t_(i));
            }
            rules.push_back({all, NcPoly(Scalar(1))});
            for (int i = 1; i <= n; ++i) {
                delta.emplace(t_(i), group_like(t_(i)));
                delta.emplace(tinv_(i), group_like(tinv_(i)));
                eps.emplace(t_(i), Scalar(1));
                eps.emplace(tinv_(i), Scalar(1));
                S.emplace(t_(i), NcPoly(tinv_(i)));
                S.emplace(tinv_(i), NcPoly(t_(i)));
            }
            break;
        }
        case AlgebraFamily::ProjectiveRing: {
            for (int i = 1; i <= n; ++i) gens.push_back(x_(i));
            for (int j = 2; j <= n; ++j)
                for (int i = 1; i < j; ++i) {
                    Scalar c = Scalar::q(1);
                    if (spec.twist) c = c * Scalar::g(i, j, -2);
                    rules.push_back({Word{x_(j), x_(i)}, NcPoly(Word{x_(i), x_(j)}, c)});
                }
            hopf = false;
            complete = false;
            break;
        }
    }

    if (spec.corrupt) {
        auto& [idx, factor] = *spec.corrupt;
        if (idx >= rules.size()) throw std::invalid_argument("corrupt: no such rule");
        NcPoly rhs;
        bool first = true;
        for (auto& [w, c] : rules[idx].rhs.terms()) {
            rhs.add(w, first ? c * factor : c);
            first = false;
        }
        rules[idx].rhs = rhs;
        complete = false;
    }

    PresentationOptions po = opts;
    po.complete = complete;
    po.min_degree = std::max(po.min_degree, n + 1);
    auto pres = std::make_shared<Presentation>(d.name, gens, rules, d, po);
    auto alg = std::make_shared<Algebra>(spec, pres);
    if (hopf) alg->set_hopf(std::move(delta), std::move(eps), std::move(S));
    if (alg->has_antipode() && !spec.corrupt) verify_antipode(*alg);
    return alg;
}

AlgebraPtr cached(const AlgebraSpec& spec) {
    if (spec.corrupt) return build(spec);
    static std::mutex mu;
    static std::map<std::tuple<int, int, int, bool>, AlgebraPtr> cache;
    auto key = std::make_tuple(static_cast<int>(spec.family), spec.n,
                               spec.family == AlgebraFamily::Parabolic ? spec.r : 0, spec.twist);
    {
        std::lock_guard lk(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    AlgebraPtr a = build(spec);
    std::lock_guard lk(mu);
    return cache.emplace(key, a).first->second;
}

AlgebraPtr cached(AlgebraFamily f, int n, int r) {
    AlgebraSpec s;
    s.family = f;
    s.n = n;
    s.r = r;
    return cached(s);
}

Projection::Projection(AlgebraPtr source, AlgebraPtr target)
    : src_(std::move(source)),
      dst_(std::move(target)),
      map_(dst_->pres(), [this](const Letter& l) { return letter_image(l); }),
      coact_(Legs{&src_->pres(), &dst_->pres()}, [this](const Letter& l) {
          TensorPoly t(2);
          for (auto& [k, c] : src_->coproduct_table().at(l).terms()) {
              NcPoly img = letter_image(k[1][0]);
              for (auto& [w, d] : img.terms()) t.add({k[0], w}, c * d);
          }
          return t;
      }) {}

NcPoly Projection::letter_image(const Letter& l) const {
    if (l.fam != Family::A) throw std::invalid_argument("projection defined on matrix entries only");
    auto e = entry(dst_->pres().descriptor(), l.i, l.j);
    return e ? NcPoly(*e) : NcPoly();
}

TorusProjection::TorusProjection(AlgebraPtr source, AlgebraPtr torus)
    : src_(std::move(source)),
      torus_(std::move(torus)),
      map_(torus_->pres(), [this](const Letter& l) { return letter_image(l); }) {}

NcPoly TorusProjection::letter_image(const Letter& l) const {
    switch (l.fam) {
        case Family::A:
        case Family::P:
            return l.i == l.j ? NcPoly(t_(l.i)) : NcPoly();
        case Family::InvP11:
            return NcPoly(tinv_(1));
        case Family::InvD:
            return NcPoly(tinv_(l.i));
        default:
            throw std::invalid_argument("no torus image for " + format_letter(l));
    }
}

std::vector<MinorCheck> grassmannian_check(int n, int r) {
    if (r < 1 || r >= n) throw std::invalid_argument("grassmannian: need 1 <= r < n");
    AlgebraPtr M = cached(AlgebraFamily::Mn, n);
    AlgebraPtr Q = cached(AlgebraFamily::Parabolic, n, r);
    Projection pi(M, Q);
    auto first = range1(1, r);
    NcPoly pd = qminor(Q->pres(), first, first);
    Legs legs{&M->pres(), &Q->pres()};
    std::vector<MinorCheck> out;
    for (auto& I : subsets(n, r)) {
        NcPoly DI = qminor(M->pres(), I, first);
        TensorPoly lhs = pi.coaction(DI);
        TensorPoly rhs = reduce_legs(TensorPoly::pure({DI, pd}), legs);
        TensorPoly diff = lhs;
        diff -= rhs;
        diff = reduce_legs(diff, legs);
        out.push_back({I, diff.is_zero(), diff.is_zero() ? std::string() : format(diff)});
    }
    return out;
}

}  // namespace qpb
