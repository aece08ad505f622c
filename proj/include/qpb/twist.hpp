#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "qpb/algebras.hpp"
#include "qpb/bundle.hpp"

namespace qpb {

// Integer exponents over t[1..n], index 0 is t[1].
using Weight = std::vector<int>;

struct Weights {
    Weight left, right;
};

// Left weight = rows, right weight = columns; inverse letters count -1.
// x[i] sits in column 1, det^-1 has weight -(1,..,1) on both sides.
Weights weights(const Word& w, int n);
// Subtract the minimum entry; the representative modulo (1,..,1).
Weight normalize(Weight w);

// gamma[j,k] for j < k as monomials in q and the phase symbols.
class CocycleSpec {
public:
    // gamma[j,k] = g[j,k].
    static CocycleSpec generic(int n);
    // Shift-invariant cocycle: gamma[j,k] = g[j,k] for 2 <= j < k and
    // gamma[1,k] = prod_{m != 1,k} gamma[k,m], so every row of exponents sums
    // to zero and the value only depends on weights modulo (1,..,1).
    static CocycleSpec descended(int n);
    static CocycleSpec trivial(int n);
    // Lines "j k g^m" (gamma[j,k] = g[j,k]^m) or "j k 1"; '#' comments.
    static CocycleSpec from_theta(int n, const std::string& text);

    int n() const { return n_; }
    // gamma[j,k] with gamma[k,j] = gamma[j,k]^-1 and gamma[j,j] = 1.
    Scalar gamma(int j, int k) const;
    bool is_trivial() const;
    bool shift_invariant() const;
    std::string str() const;
    CocycleSpec at_one() const { return trivial(n_); }

private:
    explicit CocycleSpec(int n);
    int n_;
    std::map<std::pair<int, int>, Scalar> g_;
};

// prod_{j<k} gamma[j,k]^(u_j v_k - u_k v_j)
Scalar eval_gamma(const CocycleSpec& s, const Weight& u, const Weight& v);

enum class TwistMode { Gamma, Sigma, Both };
std::string mode_name(TwistMode m);
TwistMode mode_from_name(const std::string& s);

// Phase picked up by x * y: sigma of the left weights, gamma^-1 of the right.
// sigma and gamma share one spec.
Scalar twist_phase(TwistMode m, const CocycleSpec& s, const Word& x, const Word& y);

// Termwise twisted product followed by the base normal form.
NcPoly twisted_product(const Ring& base, TwistMode m, const CocycleSpec& s, const NcPoly& a, const NcPoly& b);

// The twisted algebra modelled on the vector space of the base: same normal
// forms and zero test, product x o y = phase(x,y) xy.
class TwistedRing : public Ring {
public:
    TwistedRing(const Ring& base, TwistMode m, CocycleSpec s);
    const std::string& name() const override { return name_; }
    const Descriptor& descriptor() const override { return base_->descriptor(); }
    NcPoly normal_form(const NcPoly& p) const override { return base_->normal_form(p); }
    NcPoly mul(const NcPoly& a, const NcPoly& b) const override;
    bool is_zero(const NcPoly& p) const override { return base_->is_zero(p); }
    WordOrder order() const override { return base_->order(); }

    const Ring& base() const { return *base_; }
    TwistMode mode() const { return mode_; }
    const CocycleSpec& cocycle() const { return spec_; }

private:
    const Ring* base_;
    TwistMode mode_;
    CocycleSpec spec_;
    std::string name_;
};

// A word read as an iterated twisted product equals Phi(w) times the plain
// word: Phi(w) = prod_{a<b} phase(w_a, w_b).
Scalar transport_factor(TwistMode m, const CocycleSpec& s, const Word& w);
// Untwisted element written in twisted words: sum c_v Phi(v)^-1 v.
NcPoly to_twisted_words(TwistMode m, const CocycleSpec& s, const NcPoly& p);
// Inverse of to_twisted_words.
NcPoly from_twisted_words(TwistMode m, const CocycleSpec& s, const NcPoly& p);

// Multiparametric presentation of family f, both sides twisted by s:
// rule L -> sum c_v v becomes L -> sum c_v Phi(L)/Phi(v) v. Coproduct and
// counit tables are kept, the antipode table is rewritten in twisted words
// and checked against the axioms in the new product (throws on failure).
AlgebraPtr build_multiparametric(AlgebraFamily f, int n, const CocycleSpec& s);
// Generic cocycle for M_n, GL_n and the projective ring, descended for SL_n
// and P; cached.
AlgebraPtr multiparametric(AlgebraFamily f, int n);
CocycleSpec default_cocycle(AlgebraFamily f, int n);

struct TwistReport {
    int n = 0;
    std::vector<SubCheck> checks;
    bool pass() const;
};

// Cocycle identities on sampled torus weights, bicharacter and shift rules.
SubCheck check_cocycle(const CocycleSpec& s, std::uint64_t seed);
// Left and right weights of j_k(l) against those of l for every letter l.
// chart_adapted relabels the rows of P by the row map of chart k first.
SubCheck check_bicomodule_weights(const CleavingMap& j, bool chart_adapted);
// Every relation of the twisted P, mapped letterwise by j_k into the chart
// twisted on both sides.
SubCheck check_twisted_cleaving(const CleavingMap& j, const CocycleSpec& s);
// (a o d_i^-1) o d_i == a in the twisted chart, sampled a of degree <= D.
SubCheck check_twisted_inverse(int n, int i, const CocycleSpec& s, int D, std::uint64_t seed);
// x_i o x_j == q^-1 g[i,j]^2 x_j o x_i, both in the twisted product on the
// untwisted ring and in the multiparametric presentations. With a cocycle
// given, g[i,j] reads gamma[i,j].
SubCheck check_projective_relation(int n, const CocycleSpec* s = nullptr);
// (Gamma o Sigma)(x,y) == (Sigma o Gamma)(x,y) built as nested rings.
SubCheck check_twist_commute(const Ring& base, const CocycleSpec& s, const std::vector<Word>& words);
// Delta of the multiparametric algebra equals the untwisted Delta on letters
// and antipode axioms hold on sampled words in the twisted product.
SubCheck check_twisted_hopf(AlgebraFamily f, int n, int L, std::uint64_t seed);
// tau of j_k inside the chart with only the left (Sigma) twist.
CrossedCocycle sigma_crossed_cocycle(const CleavingMap& j, const CocycleSpec& s);

TwistReport verify_twist_theorems(int n, int D, std::uint64_t seed = 0);

}  // namespace qpb
