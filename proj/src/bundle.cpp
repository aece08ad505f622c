#include "qpb/bundle.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>

namespace qpb {

namespace {

std::vector<Letter> p_generators(const Algebra& P) { return P.pres().generators(); }

// u_j = d_j d_k^-1 monomials of total degree <= L, ordered by j.
std::vector<NcPoly> u_monomials(const LocalizedAlgebra& loc, int k, int L) {
    std::vector<int> js;
    for (int j = 1; j <= loc.n(); ++j)
        if (j != k) js.push_back(j);
    std::vector<NcPoly> out;
    std::function<void(std::size_t, int, NcPoly)> rec = [&](std::size_t t, int left, NcPoly acc) {
        if (t == js.size()) {
            out.push_back(acc);
            return;
        }
        NcPoly u = loc.normal_form(NcPoly(Word{a_(js[t], 1), dinv_(k)}));
        NcPoly cur = acc;
        for (int e = 0; e <= left; ++e) {
            rec(t + 1, left - e, cur);
            cur = loc.mul(cur, u);
        }
    };
    rec(0, L, NcPoly(Scalar(1)));
    return out;
}

std::string show_tensor(const TensorPoly& t) {
    std::string s = format(t);
    if (s.size() > 400) s = s.substr(0, 400) + "...";
    return s;
}

void fail(SubCheck& c, const std::string& w) {
    c.pass = false;
    if (c.witness.empty()) c.witness = w;
}

}  // namespace

NcPoly minor2(int i, int j, int k, int l) {
    NcPoly m(Word{a_(i, k), a_(j, l)});
    m -= NcPoly(Word{a_(i, l), a_(j, k)}, Scalar::q(-1));
    return m;
}

std::vector<Word> sample_words(const std::vector<Letter>& letters, int L, std::size_t cap, std::uint64_t seed) {
    std::size_t total = 0, layer = 1;
    for (int len = 1; len <= L; ++len) {
        layer *= letters.size();
        total += layer;
    }
    std::vector<Word> out;
    if (total <= cap) {
        std::vector<Word> frontier{Word{}};
        for (int len = 1; len <= L; ++len) {
            std::vector<Word> next;
            for (auto& w : frontier)
                for (auto& l : letters) {
                    Word v = w;
                    v.push_back(l);
                    next.push_back(v);
                }
            out.insert(out.end(), next.begin(), next.end());
            frontier = std::move(next);
        }
        return out;
    }
    std::mt19937_64 rng(seed);
    std::set<Word> seen;
    while (out.size() < cap) {
        std::size_t len = 1 + rng() % static_cast<std::size_t>(L);
        Word w;
        for (std::size_t t = 0; t < len; ++t) w.push_back(letters[rng() % letters.size()]);
        if (seen.insert(w).second) out.push_back(w);
    }
    return out;
}

CleavingMap::CleavingMap(int n, int k, AlgebraFamily base, bool corrupt) : n_(n), k_(k) {
    if (k < 1 || k > n) throw std::invalid_argument("chart index out of range");
    chart_ = localized(base, n, {k});
    P_ = cached(AlgebraFamily::P, n);
    const LocalizedAlgebra& F = *chart_;
    NcPoly dk(dinv_(k));
    for (auto& l : p_generators(*P_)) {
        NcPoly img;
        if (l.fam == Family::InvP11) {
            img = dk;
        } else if (l.i == 1) {
            img = NcPoly(a_(k, l.j));
        } else {
            // rows 2..n of P go to the rows of A other than k, in order
            int r = l.i <= k ? l.i - 1 : l.i, be = l.j;
            if (r < k)
                img = (corrupt ? -Scalar::q() : Scalar(1)) * (minor2(r, k, 1, be) * dk);
            else
                img = minor2(k, r, 1, be) * dk;
        }
        if (corrupt && l == p_(1, n)) img = Scalar::q() * img;
        table_[l] = F.normal_form(img);
    }
    map_ = std::make_unique<AlgebraMap>(F, [this](const Letter& l) { return table_.at(l); });
}

NcPoly CleavingMap::inverse(const NcPoly& h) const { return (*map_)(P_->antipode(h)); }

void CleavingMap::override_image(const Letter& l, const NcPoly& img) {
    if (!table_.count(l)) throw std::invalid_argument("no such letter in O_q(P): " + format_letter(l));
    table_[l] = chart_->normal_form(img);
    map_ = std::make_unique<AlgebraMap>(*chart_, [this](const Letter& x) { return table_.at(x); });
}

SubCheck smash_nontrivial(const CleavingMap& j) {
    SubCheck c("smash_nontrivial");
    const LocalizedAlgebra& F = j.chart();
    std::vector<NcPoly> us = u_monomials(F, j.k(), 1);
    for (auto& [l, img] : j.table())
        for (auto& b : us) {
            ++c.checked;
            NcPoly comm = F.mul(img, b) - F.mul(b, img);
            if (!F.is_zero(comm)) {
                c.witness = "[j(" + format_letter(l) + "), " + F.show(b) + "] = " + F.show(F.normal_form(comm));
                return c;
            }
        }
    c.pass = false;
    c.witness = "every j(h) commutes with the degree-one coinvariants";
    return c;
}

std::vector<SubCheck> verify_cleaving(const CleavingMap& j, std::uint64_t seed, bool quick) {
    const LocalizedAlgebra& F = j.chart();
    const Algebra& P = j.P();
    const Presentation& Pp = P.pres();
    SubCheck rel, com, conv;
    rel.name = "relations";
    com.name = "comodule";
    conv.name = "convolution";

    std::vector<NcPoly> rels = Pp.defining_relations();
    for (auto& r : Pp.rules()) rels.push_back(NcPoly(r.lhs) - r.rhs);
    for (auto& r : rels) {
        ++rel.checked;
        NcPoly img = j(r);
        if (!F.is_zero(img)) fail(rel, format(r) + " -> " + F.show(F.normal_form(img)));
    }
    if (quick && !rel.pass) return {rel, com, conv};

    auto gens = p_generators(P);
    auto words = sample_words(gens, quick ? 1 : 2, 200, seed);
    for (auto& w : words) {
        NcPoly h(w);
        ++com.checked;
        TensorPoly lhs = F.coaction(j(h));
        TensorPoly rhs = map_leg(P.coproduct(h), 0, [&](const Word& v) { return j(NcPoly(v)); });
        TensorPoly diff = lhs;
        diff -= rhs;
        if (!F.tensor_is_zero(diff, Legs{&Pp})) fail(com, format_word(w) + ": " + show_tensor(diff));
    }
    if (quick && !com.pass) return {rel, com, conv};

    // a few length-3 products; pushing inverses through S-images is costly
    std::vector<Word> more;
    for (auto& w : sample_words(gens, 3, 400, seed + 1))
        if (!quick && w.size() == 3 && more.size() < 12) more.push_back(w);
    words.insert(words.end(), more.begin(), more.end());
    for (auto& w : words) {
        NcPoly h(w);
        TensorPoly d = P.coproduct(h);
        NcPoly left, right;
        for (auto& [key, c] : d.terms()) {
            NcPoly x(key[0]), y(key[1]);
            left += c * F.mul(j(x), j.inverse(y));
            right += c * F.mul(j.inverse(x), j(y));
        }
        NcPoly eps(P.counit(h));
        ++conv.checked;
        if (!F.is_zero(left - eps)) fail(conv, "j*j^-1 on " + format_word(w) + ": " + F.show(F.normal_form(left)));
        if (!F.is_zero(right - eps)) fail(conv, "j^-1*j on " + format_word(w) + ": " + F.show(F.normal_form(right)));
    }
    return {rel, com, conv};
}

TensorPoly trivialize(const CleavingMap& j, const NcPoly& a) {
    const LocalizedAlgebra& F = j.chart();
    const Algebra& P = j.P();
    TensorPoly t = F.coaction(a);
    t = expand_leg(t, 1, [&](const Word& w) { return P.coproduct(NcPoly(w)); });
    t = map_leg(t, 1, [&](const Word& w) { return j.inverse(NcPoly(w)); });
    return merge_legs(t, 0, F);
}

std::vector<SubCheck> verify_trivialization(const CleavingMap& j, int D) {
    const LocalizedAlgebra& F = j.chart();
    const Algebra& P = j.P();
    const Presentation& Pp = P.pres();
    const int k = j.k();
    SubCheck back{"theta_phi"}, fwd{"phi_theta"}, coinv{"coinvariant_leg"};

    // words d_k^-m w with m + |w| <= D
    std::vector<NcPoly> elems;
    for (auto& w : normal_words(F.base().pres(), D))
        for (int m = 0; m + static_cast<int>(w.size()) <= D; ++m) {
            if (m > 0 && std::find(w.begin(), w.end(), a_(k, 1)) != w.end()) continue;
            std::vector<int> e(static_cast<std::size_t>(F.n()) + 1, 0);
            e[static_cast<std::size_t>(k)] = m;
            elems.push_back(NcPoly(F.make_word(e, w)));
        }
    for (auto& a : elems) {
        TensorPoly phi = trivialize(j, a);
        ++back.checked;
        TensorPoly th = map_leg(phi, 1, [&](const Word& w) { return j(NcPoly(w)); });
        NcPoly re = to_poly(merge_legs(th, 0, F));
        if (!F.is_zero(re - a)) fail(back, format(a) + " -> " + F.show(F.normal_form(re)));

        ++coinv.checked;
        TensorPoly lifted = expand_leg(phi, 0, [&](const Word& w) { return F.coaction(NcPoly(w)); });
        TensorPoly expect(3);
        for (auto& [key, c] : phi.terms()) expect.add({key[0], Word{}, key[1]}, c);
        lifted -= expect;
        if (!F.tensor_is_zero(lifted, Legs{&Pp, &Pp})) fail(coinv, format(a) + ": " + show_tensor(lifted));
    }

    auto bs = u_monomials(F, k, D);
    auto hs = normal_words(Pp, D);
    for (auto& b : bs) {
        int bdeg = static_cast<int>(b.max_length()) / 2;
        for (auto& hw : hs) {
            if (bdeg + static_cast<int>(hw.size()) > D) continue;
            NcPoly h(hw);
            ++fwd.checked;
            TensorPoly phi = trivialize(j, F.mul(b, j(h)));
            phi -= TensorPoly::pure({b, h});
            if (!F.tensor_is_zero(phi, Legs{&Pp}))
                fail(fwd, format(b) + " (x) " + format_word(hw) + ": " + show_tensor(phi));
        }
    }
    return {back, fwd, coinv};
}

TensorPoly canonical_map(const CleavingMap& j, const TensorPoly& x) {
    const LocalizedAlgebra& F = j.chart();
    TensorPoly t = expand_leg(x, 1, [&](const Word& w) { return F.coaction(NcPoly(w)); });
    return merge_legs(t, 0, F);
}

TensorPoly canonical_section(const CleavingMap& j, const TensorPoly& ah) {
    const LocalizedAlgebra& F = j.chart();
    const Algebra& P = j.P();
    TensorPoly t = expand_leg(ah, 1, [&](const Word& w) { return P.coproduct(NcPoly(w)); });
    t = map_leg(t, 1, [&](const Word& w) { return j.inverse(NcPoly(w)); });
    t = map_leg(t, 2, [&](const Word& w) { return j(NcPoly(w)); });
    return merge_legs(t, 0, F);
}

SubCheck canonical_map_section(const CleavingMap& j, int D) {
    const LocalizedAlgebra& F = j.chart();
    const Presentation& Pp = j.P().pres();
    const int k = j.k();
    SubCheck c{"chi_section"};
    std::vector<NcPoly> as;
    for (auto& w : normal_words(F.base().pres(), D))
        for (int m = 0; m + static_cast<int>(w.size()) <= D; ++m) {
            if (m > 0 && std::find(w.begin(), w.end(), a_(k, 1)) != w.end()) continue;
            std::vector<int> e(static_cast<std::size_t>(F.n()) + 1, 0);
            e[static_cast<std::size_t>(k)] = m;
            as.push_back(NcPoly(F.make_word(e, w)));
        }
    auto hs = normal_words(Pp, D);
    for (auto& a : as)
        for (auto& hw : hs) {
            if (static_cast<int>(a.max_length() + hw.size()) > D) continue;
            ++c.checked;
            TensorPoly ah = TensorPoly::pure({a, NcPoly(hw)});
            TensorPoly r = canonical_map(j, canonical_section(j, ah));
            r -= ah;
            if (!F.tensor_is_zero(r, Legs{&Pp})) fail(c, format(a) + " (x) " + format_word(hw) + ": " + show_tensor(r));
        }
    return c;
}

CrossedCocycle crossed_cocycle(const CleavingMap& j, const Ring& total) {
    const LocalizedAlgebra& F = j.chart();
    const Algebra& P = j.P();
    const Presentation& Pp = P.pres();
    CrossedCocycle out;
    auto gens = p_generators(P);
    for (auto& h : gens)
        for (auto& g : gens) {
            TensorPoly dh = P.coproduct(NcPoly(h)), dg = P.coproduct(NcPoly(g));
            NcPoly tau;
            for (auto& [kh, ch] : dh.terms())
                for (auto& [kg, cg] : dg.terms()) {
                    NcPoly left = total.mul(j(NcPoly(kh[0])), j(NcPoly(kg[0])));
                    NcPoly h2k2 = Pp.mul(NcPoly(kh[1]), NcPoly(kg[1]));
                    tau += (ch * cg) * total.mul(left, j.inverse(h2k2));
                }
            tau = F.normal_form(tau);
            Scalar e = P.counit(NcPoly(h)) * P.counit(NcPoly(g));
            if (!F.is_zero(tau - NcPoly(e))) {
                out.trivial = false;
                if (out.witness.empty())
                    out.witness = "tau(" + format_letter(h) + "," + format_letter(g) + ") = " + F.show(tau);
            }
            TensorPoly d = F.coaction(tau);
            d -= TensorPoly::pure({tau, NcPoly(Scalar(1))});
            if (!F.tensor_is_zero(d, Legs{&Pp})) out.coinvariant = false;
            out.values[{h, g}] = tau;
        }
    return out;
}

SheafModel::SheafModel(int n) : n_(n) {
    global_ = cached(AlgebraFamily::SLn, n);
    for (int s = 1; s <= n; ++s)
        for (auto& I : subsets(n, s)) {
            charts_.push_back(I);
            objects_[I] = localized(AlgebraFamily::SLn, n, I);
        }
}

LocalizedPtr SheafModel::object(const std::vector<int>& I) const {
    auto it = objects_.find(I);
    if (it == objects_.end()) throw std::invalid_argument("no such chart");
    return it->second;
}

NcPoly SheafModel::restrict(const std::vector<int>& I, const std::vector<int>& J, const NcPoly& x) const {
    if (!std::includes(J.begin(), J.end(), I.begin(), I.end())) throw std::invalid_argument("restriction needs I in J");
    if (J.empty()) return global_->pres().normal_form(x);
    return object(J)->normal_form(x);
}

std::vector<SubCheck> verify_sheaf(const SheafModel& S, int D) {
    SubCheck func{"functoriality"}, com{"comodule_morphism"}, inj{"injective"};
    const int n = S.n();
    std::vector<std::vector<int>> all{{}};
    all.insert(all.end(), S.charts().begin(), S.charts().end());
    auto gens_of = [&](const std::vector<int>& I) {
        std::vector<Letter> g = S.global().pres().generators();
        for (int i : I) g.push_back(dinv_(i));
        return g;
    };
    auto sub = [](const std::vector<int>& a, const std::vector<int>& b) {
        return a != b && std::includes(b.begin(), b.end(), a.begin(), a.end());
    };
    AlgebraPtr P = cached(AlgebraFamily::P, n);
    Projection proj(cached(AlgebraFamily::SLn, n), P);
    auto delta = [&](const std::vector<int>& I, const NcPoly& x) {
        return I.empty() ? proj.coaction(x) : S.object(I)->coaction(x);
    };

    for (auto& I : all)
        for (auto& J : all) {
            if (!sub(I, J)) continue;
            auto FJ = S.object(J);
            auto words = sample_words(gens_of(I), 2, 400, 7);
            for (auto& w : words) {
                NcPoly x(w);
                for (auto& K : all) {
                    if (!sub(J, K)) continue;
                    ++func.checked;
                    NcPoly two = S.restrict(J, K, S.restrict(I, J, x));
                    NcPoly one = S.restrict(I, K, x);
                    if (!S.object(K)->is_zero(two - one)) fail(func, format_word(w));
                }
                if (w.size() > 1) continue;
                ++com.checked;
                TensorPoly lhs = FJ->coaction(S.restrict(I, J, x));
                TensorPoly rhs = map_leg(delta(I, x), 0, [&](const Word& v) { return S.restrict(I, J, NcPoly(v)); });
                lhs -= rhs;
                if (!FJ->tensor_is_zero(lhs, Legs{&P->pres()})) fail(com, format_word(w) + ": " + show_tensor(lhs));
            }

            // ranks before and after restriction agree on d_I^-m w, |w| <= D, m <= D
            std::vector<NcPoly> elems;
            for (auto& w : normal_words(S.global().pres(), D)) {
                if (I.empty()) {
                    elems.push_back(NcPoly(w));
                    continue;
                }
                for (int m = 0; m <= D; ++m) {
                    std::vector<int> e(static_cast<std::size_t>(n) + 1, 0);
                    for (int i : I) e[static_cast<std::size_t>(i)] = m;
                    elems.push_back(NcPoly(S.object(I)->make_word(e, w)));
                }
            }
            std::vector<int> M(static_cast<std::size_t>(n) + 1, 0);
            for (int i : I) M[static_cast<std::size_t>(i)] = D;
            SparseMatrix src, dst;
            for (auto& x : elems) {
                NcPoly a = I.empty() ? S.global().pres().normal_form(x) : S.object(I)->clear(x, M);
                NcPoly b = FJ->clear(S.restrict(I, J, x), M);
                SparseMatrix::Column ca, cb;
                for (auto& [w, c] : a.terms()) ca.emplace_back(format_word(w), c);
                for (auto& [w, c] : b.terms()) cb.emplace_back(format_word(w), c);
                src.add_column(ca);
                dst.add_column(cb);
            }
            ++inj.checked;
            ModPoint pt = ModPoint::random(11);
            std::size_t rs = src.rank_at(pt), rd = dst.rank_at(pt);
            if (rs != rd)
                fail(inj, "rank " + std::to_string(rs) + " -> " + std::to_string(rd) + " restricting " +
                              std::to_string(I.size()) + "-chart to " + std::to_string(J.size()) + "-chart");
        }
    return {func, com, inj};
}

PullbackReport global_sections_pullback(int D, std::uint64_t seed) {
    PullbackReport rep;
    const int n = 2;
    auto G = cached(AlgebraFamily::SLn, n);
    auto U12 = localized(AlgebraFamily::SLn, n, {1, 2});
    std::vector<int> M{0, D, D};
    auto col = [&](const NcPoly& x) {
        SparseMatrix::Column c;
        NcPoly num = U12->clear(x, M);
        for (auto& [w, s] : num.terms()) c.emplace_back(format_word(w), s);
        return c;
    };
    auto window = [&](int i) {
        // d_i^-m w with m <= D and |w| - m <= D
        std::vector<NcPoly> out;
        for (auto& w : normal_words(G->pres(), 2 * D))
            for (int m = 0; m <= D; ++m) {
                if (static_cast<int>(w.size()) - m > D) continue;
                if (m > 0 && std::find(w.begin(), w.end(), a_(i, 1)) != w.end()) continue;
                std::vector<int> e(3, 0);
                e[static_cast<std::size_t>(i)] = m;
                out.push_back(NcPoly(U12->make_word(e, w)));
            }
        return out;
    };
    auto W1 = window(1), W2 = window(2);
    auto globals = normal_words(G->pres(), D);
    rep.global_dim = globals.size();

    SparseMatrix A, B, AB, AG, BG;
    for (auto& x : W1) {
        auto c = col(x);
        A.add_column(c);
        AB.add_column(c);
        AG.add_column(c);
    }
    for (auto& x : W2) {
        auto c = col(x);
        B.add_column(c);
        AB.add_column(c);
        BG.add_column(c);
    }
    for (auto& w : globals) {
        auto c = col(NcPoly(w));
        AG.add_column(c);
        BG.add_column(c);
    }
    std::size_t r[2][5];
    for (int s = 0; s < 2; ++s) {
        ModPoint pt = ModPoint::random(seed * 2 + static_cast<std::uint64_t>(s) + 101);
        r[s][0] = A.rank_at(pt);
        r[s][1] = B.rank_at(pt);
        r[s][2] = AB.rank_at(pt);
        r[s][3] = AG.rank_at(pt);
        r[s][4] = BG.rank_at(pt);
    }
    bool stable = std::equal(r[0], r[0] + 5, r[1]);
    rep.equalizer_dim = r[0][0] + r[0][1] - r[0][2];
    rep.global_in_both = r[0][3] == r[0][0] && r[0][4] == r[0][1];
    rep.pass = stable && rep.global_in_both && rep.equalizer_dim == rep.global_dim;
    if (!rep.pass)
        rep.witness = "equalizer " + std::to_string(rep.equalizer_dim) + " vs global " + std::to_string(rep.global_dim) +
                      (stable ? "" : " (ranks unstable across points)");
    return rep;
}

SubCheck factorization_identity(int n, AlgebraFamily base) {
    SubCheck c{"factorization"};
    CleavingMap j(n, 1, base);
    const LocalizedAlgebra& F = j.chart();
    NcPoly detp = NcPoly(p_(1, 1)) * qminor_free(j.P().pres().descriptor(), range1(2, n), range1(2, n));
    NcPoly lhs = j(detp);
    NcPoly rhs = qdet(F.base().pres());
    c.checked = 1;
    if (!F.is_zero(lhs - rhs)) fail(c, F.show(F.normal_form(lhs - rhs)));
    return c;
}

}  // namespace qpb
