#include "qpb/localization.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

namespace qpb {

namespace {

const Scalar& qc() {
    static const Scalar c = Scalar::q(-1) - Scalar::q(1);
    return c;
}

}  // namespace

LocalizedAlgebra::LocalizedAlgebra(AlgebraPtr base, std::vector<int> build_order)
    : base_(std::move(base)), order_(std::move(build_order)) {
    auto fam = base_->spec().family;
    if (fam != AlgebraFamily::Mn && fam != AlgebraFamily::SLn)
        throw std::invalid_argument("localization needs an O_q(M_n) or O_q(SL_n) base");
    if (order_.empty()) throw std::invalid_argument("localization needs at least one inverted index");
    std::set<int> seen;
    for (int i : order_) {
        if (i < 1 || i > base_->n()) throw std::invalid_argument("inverted index out of range");
        if (!seen.insert(i).second) throw std::invalid_argument("inverted index repeated");
    }
    desc_ = base_->pres().descriptor();
    desc_.families.insert(Family::InvD);
    desc_.inverted = seen;
    name_ = base_->name() + "[";
    for (std::size_t t = 0; t < order_.size(); ++t)
        name_ += (t ? "," : "") + std::string("d") + std::to_string(order_[t]) + "^-1";
    name_ += "]";
    desc_.name = name_;
    if (fam == AlgebraFamily::SLn) {
        P_ = cached(AlgebraFamily::P, base_->n());
        const Algebra* B = base_.get();
        coact_ = std::make_unique<TensorAlgebraMap>(Legs{this, &P_->pres()}, [this, B](const Letter& l) {
            TensorPoly t(2);
            if (l.fam == Family::InvD) {
                t.add({Word{l}, Word{pinv_()}}, Scalar(1));
                return t;
            }
            auto& Pd = P_->pres().descriptor();
            for (auto& [k, c] : B->coproduct_table().at(l).terms()) {
                auto e = entry(Pd, k[1][0].i, k[1][0].j);
                if (e) t.add({k[0], Word{*e}}, c);
            }
            return t;
        });
    }
}

bool LocalizedAlgebra::inverts(int i) const { return desc_.inverted.count(i) != 0; }

std::size_t LocalizedAlgebra::pos(int i) const {
    auto it = std::find(order_.begin(), order_.end(), i);
    if (it == order_.end()) throw std::invalid_argument("d[" + std::to_string(i) + "] is not inverted in " + name_);
    return static_cast<std::size_t>(it - order_.begin());
}

WordOrder LocalizedAlgebra::order() const {
    // Prefix first, then the base order.
    auto base_order = base_->pres().order();
    return [this, base_order](const Word& a, const Word& b) {
        auto ea = exponents(a), eb = exponents(b);
        if (ea != eb) return ea < eb;
        return base_order(base_part(a), base_part(b));
    };
}

std::vector<PushTerm> LocalizedAlgebra::push_letter(const Letter& x, int i) const {
    if (x.fam != Family::A) throw std::invalid_argument("push_letter: base letter expected");
    const int k = x.i, l = x.j;
    if (k == i && l == 1) return {{0, {}, Scalar(1)}};
    if (k == i) return {{1, {x}, Scalar::q(-1)}};
    if (l == 1) return {{1, {x}, k < i ? Scalar::q(1) : Scalar::q(-1)}};
    if (k < i) return {{1, {x}, Scalar(1)}};
    return {{1, {x}, Scalar(1)}, {2, {a_(i, l), a_(k, 1)}, qc() * Scalar::q(-2)}};
}

NcPoly LocalizedAlgebra::push_rule(const Letter& x, int i) const {
    NcPoly out;
    for (auto& t : push_letter(x, i)) {
        Word w(static_cast<std::size_t>(t.power), dinv_(i));
        w.insert(w.end(), t.word.begin(), t.word.end());
        out.add(w, t.c);
    }
    return out;
}

Scalar LocalizedAlgebra::swap(int j, int i) const {
    // d_i d_j = lambda d_j d_i  =>  d_j^-1 d_i^-1 = lambda^-1 d_i^-1 d_j^-1
    if (i == j) return Scalar(1);
    Scalar lambda = i < j ? Scalar::q(-1) : Scalar::q(1);
    return lambda.inverse();
}

std::vector<std::string> LocalizedAlgebra::self_check() const {
    std::vector<std::string> bad;
    const Presentation& B = base_->pres();
    for (int i : order_) {
        Letter d = a_(i, 1);
        for (auto& x : B.generators()) {
            auto terms = push_letter(x, i);
            int E = 0;
            for (auto& t : terms) E = std::max(E, t.power);
            // d^E x  ==  sum c d^(E - power) y d
            NcPoly lhs = NcPoly(Word(static_cast<std::size_t>(E), d)) * NcPoly(x);
            NcPoly rhs;
            for (auto& t : terms) {
                Word w(static_cast<std::size_t>(E - t.power), d);
                w.insert(w.end(), t.word.begin(), t.word.end());
                w.push_back(d);
                rhs.add(w, t.c);
            }
            if (!B.equal_mod(lhs, rhs))
                bad.push_back(format_letter(x) + "*d[" + std::to_string(i) + "]^-1 -> " + format(push_rule(x, i)));
        }
        for (int j : order_) {
            if (j == i) continue;
            // d_i d_j = swap(j,i)^-1 d_j d_i
            NcPoly lhs(Word{a_(i, 1), a_(j, 1)});
            NcPoly rhs(Word{a_(j, 1), a_(i, 1)}, swap(j, i).inverse());
            if (!B.equal_mod(lhs, rhs))
                bad.push_back("swap d[" + std::to_string(j) + "]^-1 d[" + std::to_string(i) + "]^-1");
        }
    }
    return bad;
}

std::vector<int> LocalizedAlgebra::exponents(const Word& w) const {
    std::vector<int> e(static_cast<std::size_t>(n()) + 1, 0);
    for (auto& l : w)
        if (l.fam == Family::InvD) ++e[l.i];
    return e;
}

Word LocalizedAlgebra::base_part(const Word& w) const {
    Word b;
    for (auto& l : w)
        if (l.fam != Family::InvD) b.push_back(l);
    return b;
}

Word LocalizedAlgebra::make_word(const std::vector<int>& exps, const Word& base) const {
    Word w;
    for (int i : order_)
        for (int t = 0; t < exps[static_cast<std::size_t>(i)]; ++t) w.push_back(dinv_(i));
    w.insert(w.end(), base.begin(), base.end());
    return w;
}

const LocalizedAlgebra::Push& LocalizedAlgebra::push_word(const Word& u, int i) const {
    auto key = std::make_pair(u, i);
    auto it = push_memo_.find(key);
    if (it != push_memo_.end()) return it->second;
    Push out;
    if (u.empty()) {
        out.push_back({{1, Word{}}, Scalar(1)});
    } else {
        Word head(u.begin(), u.end() - 1);
        std::map<std::pair<int, Word>, Scalar> acc;
        for (auto& t : push_letter(u.back(), i)) {
            for (auto& [mv, c] : push_pow(head, i, t.power)) {
                Word w = mv.second;
                w.insert(w.end(), t.word.begin(), t.word.end());
                acc[{mv.first, w}] += c * t.c;
            }
        }
        for (auto& [k, c] : acc)
            if (!c.is_zero()) out.push_back({k, c});
    }
    return push_memo_.emplace(key, std::move(out)).first->second;
}

LocalizedAlgebra::Push LocalizedAlgebra::push_pow(const Word& u, int i, int r) const {
    Push cur{{{0, u}, Scalar(1)}};
    for (int s = 0; s < r; ++s) {
        std::map<std::pair<int, Word>, Scalar> acc;
        for (auto& [mv, c] : cur)
            for (auto& [mv2, c2] : push_word(mv.second, i)) acc[{mv.first + mv2.first, mv2.second}] += c * c2;
        cur.clear();
        for (auto& [k, c] : acc)
            if (!c.is_zero()) cur.push_back({k, c});
    }
    return cur;
}

NcPoly LocalizedAlgebra::canonicalize(const std::vector<int>& exps0, const NcPoly& base_poly,
                                      const Scalar& c0) const {
    const Presentation& B = base_->pres();
    std::vector<std::tuple<std::vector<int>, Word, Scalar>> work;
    for (auto& [w, c] : base_poly.terms()) work.emplace_back(exps0, w, c * c0);
    NcPoly out;
    while (!work.empty()) {
        auto [e, w, c] = std::move(work.back());
        work.pop_back();
        bool done = true;
        for (std::size_t p = 0; p < order_.size() && done; ++p) {
            int i = order_[p];
            if (e[static_cast<std::size_t>(i)] == 0) continue;
            auto at = std::find(w.begin(), w.end(), a_(i, 1));
            if (at == w.end()) continue;
            done = false;
            // u a_i1 = q^-(col-1 letters in u) a_i1 u, then slide a_i1 left
            // through the later inverse blocks and cancel.
            Scalar f(1);
            int col1 = 0;
            for (auto it = w.begin(); it != at; ++it)
                if (it->j == 1) ++col1;
            f = f * Scalar::q(-col1);
            for (std::size_t p2 = p + 1; p2 < order_.size(); ++p2) {
                int j = order_[p2];
                int m = e[static_cast<std::size_t>(j)];
                if (!m) continue;
                // a_i1 d_j^-1 = kappa d_j^-1 a_i1
                Scalar kappa = i < j ? Scalar::q(1) : Scalar::q(-1);
                f = f * kappa.inverse().pow(m);
            }
            Word rest(w.begin(), at);
            rest.insert(rest.end(), at + 1, w.end());
            auto e2 = e;
            --e2[static_cast<std::size_t>(i)];
            NcPoly r = B.normal_form(NcPoly(rest));
            for (auto& [w2, c2] : r.terms()) work.emplace_back(e2, w2, c * f * c2);
        }
        if (done) out.add(make_word(e, w), c);
    }
    return out;
}

NcPoly LocalizedAlgebra::mul(const NcPoly& x, const NcPoly& y) const {
    std::lock_guard lk(mu_);
    return mul_canonical(normal_form(x), normal_form(y));
}

bool LocalizedAlgebra::is_canonical(const Word& w) const {
    std::size_t t = 0, p = 0;
    std::vector<int> e(static_cast<std::size_t>(n()) + 1, 0);
    while (t < w.size() && w[t].fam == Family::InvD) {
        while (p < order_.size() && order_[p] != w[t].i) ++p;
        if (p == order_.size()) return false;
        ++e[w[t].i];
        ++t;
    }
    Word b(w.begin() + static_cast<long>(t), w.end());
    for (auto& l : b) {
        if (l.fam != Family::A) return false;
        if (l.j == 1 && e[l.i] > 0) return false;
    }
    NcPoly r = base_->pres().normal_form(NcPoly(b));
    return r.size() == 1 && r.terms().begin()->first == b && r.terms().begin()->second.is_one();
}

NcPoly LocalizedAlgebra::mul_canonical(const NcPoly& X, const NcPoly& Y) const {
    const Presentation& B = base_->pres();
    NcPoly out;
    for (auto& [wx, cx] : X.terms()) {
        auto ex = exponents(wx);
        Word bx = base_part(wx);
        for (auto& [wy, cy] : Y.terms()) {
            auto ey = exponents(wy);
            Word by = base_part(wy);
            // bx * prefix(y): push inverse letters of y left, in build order
            std::vector<std::pair<std::pair<std::vector<int>, Word>, Scalar>> cur{
                {{std::vector<int>(ex.size(), 0), bx}, Scalar(1)}};
            for (int i : order_) {
                for (int r = 0; r < ey[static_cast<std::size_t>(i)]; ++r) {
                    std::map<std::pair<std::vector<int>, Word>, Scalar> acc;
                    for (auto& [k, c] : cur)
                        for (auto& [mv, c2] : push_word(k.second, i)) {
                            auto e = k.first;
                            e[static_cast<std::size_t>(i)] += mv.first;
                            acc[{e, mv.second}] += c * c2;
                        }
                    cur.clear();
                    for (auto& [k, c] : acc)
                        if (!c.is_zero()) cur.push_back({k, c});
                }
            }
            for (auto& [k, c] : cur) {
                // prefix(x) * prefix(k): sort the blocks
                Scalar f(1);
                for (std::size_t p = 0; p < order_.size(); ++p)
                    for (std::size_t p2 = 0; p2 < p; ++p2) {
                        int a = order_[p], b = order_[p2];
                        int ma = ex[static_cast<std::size_t>(a)], mb = k.first[static_cast<std::size_t>(b)];
                        if (ma && mb) f = f * swap(a, b).pow(ma * mb);
                    }
                auto e = ex;
                for (std::size_t t = 0; t < e.size(); ++t) e[t] += k.first[t];
                Word bw = k.second;
                bw.insert(bw.end(), by.begin(), by.end());
                out += canonicalize(e, B.normal_form(NcPoly(bw)), cx * cy * c * f);
            }
        }
    }
    return out;
}

NcPoly LocalizedAlgebra::word_nf(const Word& w) const {
    auto it = nf_memo_.find(w);
    if (it != nf_memo_.end()) return it->second;
    NcPoly r;
    if (w.empty()) {
        r = NcPoly(Scalar(1));
    } else if (is_canonical(w)) {
        r = NcPoly(w);
    } else if (w.size() == 1) {
        const Letter& l = w[0];
        if (l.fam == Family::InvD) {
            pos(l.i);
            r = NcPoly(w);
        } else if (base_->pres().has_letter(l)) {
            r = canonicalize(std::vector<int>(static_cast<std::size_t>(n()) + 1, 0), base_->pres().normal_form(NcPoly(w)),
                             Scalar(1));
        } else {
            throw std::invalid_argument("letter not in " + name_ + ": " + format_letter(l));
        }
    } else {
        Word head(w.begin(), w.end() - 1);
        r = mul_canonical(word_nf(head), word_nf(Word{w.back()}));
    }
    nf_memo_.emplace(w, r);
    return r;
}

NcPoly LocalizedAlgebra::normal_form(const NcPoly& p) const {
    std::lock_guard lk(mu_);
    NcPoly out;
    for (auto& [w, c] : p.terms()) out += c * word_nf(w);
    return out;
}

std::vector<int> LocalizedAlgebra::max_exponents(const NcPoly& p) const {
    std::vector<int> M(static_cast<std::size_t>(n()) + 1, 0);
    for (auto& [w, c] : p.terms()) {
        auto e = exponents(w);
        for (std::size_t t = 0; t < M.size(); ++t) M[t] = std::max(M[t], e[t]);
    }
    return M;
}

Word LocalizedAlgebra::denominator(const std::vector<int>& M) const {
    Word w;
    for (int i = 1; i <= n(); ++i)
        for (int t = 0; t < M[static_cast<std::size_t>(i)]; ++t) w.push_back(a_(i, 1));
    return w;
}

NcPoly LocalizedAlgebra::clear(const NcPoly& x, const std::vector<int>& M) const {
    NcPoly y = mul(NcPoly(denominator(M)), x);
    for (auto& [w, c] : y.terms())
        for (auto& l : w)
            if (l.fam == Family::InvD) throw std::logic_error("clear: denominator too small for " + format(x));
    return y;
}

bool LocalizedAlgebra::is_zero(const NcPoly& p) const {
    NcPoly x = normal_form(p);
    if (x.is_zero()) return true;
    return clear(x, max_exponents(x)).is_zero();
}

TensorPoly LocalizedAlgebra::coaction(const NcPoly& p) const {
    if (!coact_) throw std::invalid_argument("coaction needs an O_q(SL_n) base");
    return (*coact_)(p);
}

bool LocalizedAlgebra::tensor_is_zero(const TensorPoly& t, const Legs& others) const {
    std::vector<int> M(static_cast<std::size_t>(n()) + 1, 0);
    for (auto& [k, c] : t.terms()) {
        auto e = exponents(k[0]);
        for (std::size_t s = 0; s < M.size(); ++s) M[s] = std::max(M[s], e[s]);
    }
    TensorPoly cleared = map_leg(t, 0, [&](const Word& w) { return clear(NcPoly(w), M); });
    Legs legs{&base_->pres()};
    legs.insert(legs.end(), others.begin(), others.end());
    return reduce_legs(cleared, legs).is_zero();
}

LocalizedPtr localize(AlgebraPtr base, std::vector<int> build_order) {
    auto L = std::make_shared<LocalizedAlgebra>(std::move(base), std::move(build_order));
    auto bad = L->self_check();
    if (!bad.empty()) throw std::logic_error("push rule self-check failed: " + bad.front());
    return L;
}

LocalizedPtr localized(AlgebraFamily f, int n, std::vector<int> build_order) {
    static std::mutex mu;
    static std::map<std::tuple<int, int, std::vector<int>>, LocalizedPtr> cache;
    auto key = std::make_tuple(static_cast<int>(f), n, build_order);
    {
        std::lock_guard lk(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    auto L = localize(cached(f, n), build_order);
    std::lock_guard lk(mu);
    return cache.emplace(key, L).first->second;
}

std::vector<Word> normal_words(const Presentation& P, int L) {
    std::vector<Word> out{Word{}};
    const auto& gens = P.generators();
    std::vector<Word> frontier{Word{}};
    std::vector<std::size_t> last{0};
    for (int len = 1; len <= L; ++len) {
        std::vector<Word> next;
        std::vector<std::size_t> next_last;
        for (std::size_t f = 0; f < frontier.size(); ++f)
            for (std::size_t g = last[f]; g < gens.size(); ++g) {
                Word w = frontier[f];
                w.push_back(gens[g]);
                NcPoly r = P.normal_form(NcPoly(w));
                if (r.size() == 1 && r.terms().begin()->first == w && r.terms().begin()->second.is_one()) {
                    next.push_back(w);
                    next_last.push_back(g);
                }
            }
        out.insert(out.end(), next.begin(), next.end());
        frontier = std::move(next);
        last = std::move(next_last);
    }
    return out;
}

OrderReport check_order_independence(AlgebraFamily f, int n, const std::vector<int>& I, int D, std::uint64_t seed) {
    OrderReport rep;
    std::vector<int> perm = I;
    std::sort(perm.begin(), perm.end());
    std::vector<LocalizedPtr> systems;
    do {
        systems.push_back(localized(f, n, perm));
    } while (std::next_permutation(perm.begin(), perm.end()));
    rep.orders = systems.size();
    if (systems.size() < 2) return rep;

    std::vector<Letter> letters = cached(f, n)->pres().generators();
    for (int i : I) letters.push_back(dinv_(i));
    std::vector<Word> words{Word{}};
    std::size_t total = 1, layer = 1;
    for (int len = 1; len <= D; ++len) {
        layer *= letters.size();
        total += layer;
    }
    const std::size_t cap = 1500;
    if (total <= cap) {
        std::vector<Word> frontier{Word{}};
        for (int len = 1; len <= D; ++len) {
            std::vector<Word> next;
            for (auto& w : frontier)
                for (auto& l : letters) {
                    Word v = w;
                    v.push_back(l);
                    next.push_back(v);
                }
            words.insert(words.end(), next.begin(), next.end());
            frontier = std::move(next);
        }
    } else {
        std::mt19937_64 rng(seed);
        for (std::size_t s = 0; s < cap; ++s) {
            std::size_t len = 1 + rng() % static_cast<std::size_t>(D);
            Word w;
            for (std::size_t t = 0; t < len; ++t) w.push_back(letters[rng() % letters.size()]);
            words.push_back(w);
        }
    }
    rep.words = words.size();
    std::vector<int> M(static_cast<std::size_t>(n) + 1, 0);
    for (int i : I) M[static_cast<std::size_t>(i)] = D;
    for (auto& w : words) {
        NcPoly ref = systems[0]->clear(NcPoly(w), M);
        for (std::size_t s = 1; s < systems.size(); ++s) {
            NcPoly other = systems[s]->clear(NcPoly(w), M);
            if (!(ref == other)) {
                rep.pass = false;
                if (rep.witness.empty())
                    rep.witness = format_word(w) + ": " + systems[0]->base().pres().show(ref - other);
            }
        }
    }
    return rep;
}

CoinvariantReport coinvariants(AlgebraFamily f, int n, int i, int L, std::uint64_t seed) {
    CoinvariantReport rep;
    auto loc = localized(f, n, {i});
    const Presentation& B = loc->base().pres();
    const Presentation& Pp = loc->parabolic()->pres();
    Legs right{&Pp};

    // window
    std::vector<NcPoly> window;
    for (int m = 0; m <= L; ++m)
        for (auto& w : normal_words(B, L)) {
            if (m > 0 && std::find(w.begin(), w.end(), a_(i, 1)) != w.end()) continue;
            std::vector<int> col(static_cast<std::size_t>(n) + 1, 0);
            for (auto& l : w) ++col[l.j];
            col[1] -= m;
            bool flat = true;
            for (int c = 2; c <= n; ++c)
                if (col[static_cast<std::size_t>(c)] != col[1]) flat = false;
            if (!flat) continue;
            std::vector<int> e(static_cast<std::size_t>(n) + 1, 0);
            e[static_cast<std::size_t>(i)] = m;
            window.push_back(NcPoly(loc->make_word(e, w)));
        }
    rep.window = window.size();

    // monomials in u_j = d_j d_i^-1, ordered by j
    std::vector<int> js;
    for (int j = 1; j <= n; ++j)
        if (j != i) js.push_back(j);
    std::vector<NcPoly> monos;
    std::function<void(std::size_t, int, NcPoly)> rec = [&](std::size_t t, int left, NcPoly acc) {
        if (t == js.size()) {
            monos.push_back(acc);
            return;
        }
        NcPoly u = loc->normal_form(NcPoly(Word{a_(js[t], 1), dinv_(i)}));
        NcPoly cur = acc;
        for (int e = 0; e <= left; ++e) {
            rec(t + 1, left - e, cur);
            cur = loc->mul(cur, u);
        }
    };
    rec(0, L, NcPoly(Scalar(1)));

    std::vector<int> M(static_cast<std::size_t>(n) + 1, 0);
    M[static_cast<std::size_t>(i)] = L;
    auto key_of = [](const Word& w) { return format_word(w); };

    SparseMatrix V, Vc, F, C;
    auto numerator_col = [&](const NcPoly& x) {
        SparseMatrix::Column col;
        NcPoly num = loc->clear(x, M);
        for (auto& [w, c] : num.terms()) col.emplace_back(key_of(w), c);
        return col;
    };
    for (auto& x : window) {
        auto col = numerator_col(x);
        V.add_column(col);
        Vc.add_column(col);
        TensorPoly d = loc->coaction(x);
        d -= TensorPoly::pure({x, NcPoly(Scalar(1))});
        TensorPoly cl = map_leg(d, 0, [&](const Word& w) { return loc->clear(NcPoly(w), M); });
        cl = reduce_legs(cl, Legs{&B, &Pp});
        SparseMatrix::Column fc;
        for (auto& [k, c] : cl.terms()) fc.emplace_back(key_of(k[0]) + " (x) " + key_of(k[1]), c);
        F.add_column(fc);
    }
    rep.monomials_coinvariant = true;
    for (auto& u : monos) {
        auto col = numerator_col(u);
        C.add_column(col);
        Vc.add_column(col);
        TensorPoly d = loc->coaction(u);
        d -= TensorPoly::pure({u, NcPoly(Scalar(1))});
        if (!loc->tensor_is_zero(d, right)) {
            rep.monomials_coinvariant = false;
            if (rep.witness.empty()) rep.witness = "not coinvariant: " + format(u);
        }
    }
    // two independent points; ranks must agree
    std::size_t dims[2][4];
    for (int s = 0; s < 2; ++s) {
        ModPoint pt = ModPoint::random(seed * 2 + static_cast<std::uint64_t>(s) + 1);
        dims[s][0] = V.rank_at(pt);
        dims[s][1] = F.rank_at(pt);
        dims[s][2] = C.rank_at(pt);
        dims[s][3] = Vc.rank_at(pt);
    }
    bool stable = std::equal(dims[0], dims[0] + 4, dims[1]);
    rep.span_dim = dims[0][0];
    rep.kernel_dim = dims[0][0] - dims[0][1];
    rep.expected_dim = dims[0][2];
    rep.monomials_in_window = dims[0][3] == dims[0][0];
    rep.pass = stable && rep.monomials_coinvariant && rep.monomials_in_window && rep.kernel_dim == rep.expected_dim;
    if (!rep.pass && rep.witness.empty())
        rep.witness = "kernel " + std::to_string(rep.kernel_dim) + " vs monomials " + std::to_string(rep.expected_dim) +
                      (stable ? "" : " (ranks unstable across points)");
    return rep;
}

}  // namespace qpb
