#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "qpb/localization.hpp"

namespace qpb {

struct SubCheck {
    SubCheck() = default;
    explicit SubCheck(std::string n) : name(std::move(n)) {}
    std::string name;
    bool pass = true;
    bool skip = false;  // not applicable; witness says why
    std::string witness;
    std::string note;  // extra finding that does not decide pass/fail
    std::size_t checked = 0;
};

// j_k : O_q(P) -> F(U_k) on letters, extended multiplicatively with the
// untwisted product of the chart.
class CleavingMap {
public:
    // base = SLn for the bundle; Mn gives the map used for the factorization
    // identity. Row alpha >= 2 of P goes to row r of A, r running over the
    // rows other than k in order: p[alpha,b] -> D(r,k; 1,b) d_k^-1 for r < k,
    // D(k,r; 1,b) d_k^-1 for r > k.
    // corrupt puts a -q on the rows r < k and scales j(p[1,n]) by q (there
    // are no rows r < k when k = 1).
    CleavingMap(int n, int k, AlgebraFamily base = AlgebraFamily::SLn, bool corrupt = false);

    int n() const { return n_; }
    int k() const { return k_; }
    const LocalizedAlgebra& chart() const { return *chart_; }
    LocalizedPtr chart_ptr() const { return chart_; }
    const Algebra& P() const { return *P_; }
    AlgebraPtr P_ptr() const { return P_; }

    const std::map<Letter, NcPoly>& table() const { return table_; }
    NcPoly image(const Letter& l) const { return table_.at(l); }
    NcPoly operator()(const NcPoly& h) const { return (*map_)(h); }
    // Convolution inverse j o S.
    NcPoly inverse(const NcPoly& h) const;
    // Replace one image (negative controls).
    void override_image(const Letter& l, const NcPoly& img);

private:
    int n_, k_;
    LocalizedPtr chart_;
    AlgebraPtr P_;
    std::map<Letter, NcPoly> table_;
    std::unique_ptr<AlgebraMap> map_;
};

// D^{kl}_{ij} = a_ik a_jl - q^-1 a_il a_jk
NcPoly minor2(int i, int j, int k, int l);

// (i) relations, (ii) comodule property, (iii) convolution invertibility.
// quick: words of length 1 only, stop at the first failing sub-check.
std::vector<SubCheck> verify_cleaving(const CleavingMap& j, std::uint64_t seed = 0, bool quick = false);

// Some j(h) fails to commute with some coinvariant d_j d_k^-1; the witness
// is that commutator.
SubCheck smash_nontrivial(const CleavingMap& j);

// theta(b (x) h) = b j(h), Phi(a) = a_0 j^-1(a_1) (x) a_2.
std::vector<SubCheck> verify_trivialization(const CleavingMap& j, int D);
TensorPoly trivialize(const CleavingMap& j, const NcPoly& a);

// chi o chi~ on a (x) h, chi~(a (x) h) = a j^-1(h_1) (x) j(h_2).
SubCheck canonical_map_section(const CleavingMap& j, int D);
TensorPoly canonical_map(const CleavingMap& j, const TensorPoly& x);
TensorPoly canonical_section(const CleavingMap& j, const TensorPoly& ah);

// tau(h,k) = j(h_1) j(k_1) j^-1(h_2 k_2) on generator pairs, with products in
// the total space taken in `total` (the chart itself, or a twisted product).
struct CrossedCocycle {
    std::map<std::pair<Letter, Letter>, NcPoly> values;
    bool trivial = true;
    bool coinvariant = true;
    std::string witness;
};
CrossedCocycle crossed_cocycle(const CleavingMap& j, const Ring& total);

// Presheaf on the subsets of {1..n}; restrictions are inclusions.
class SheafModel {
public:
    explicit SheafModel(int n);
    int n() const { return n_; }
    const std::vector<std::vector<int>>& charts() const { return charts_; }
    LocalizedPtr object(const std::vector<int>& I) const;
    const Algebra& global() const { return *global_; }
    // r_IJ for I subset of J; I empty means the global object.
    NcPoly restrict(const std::vector<int>& I, const std::vector<int>& J, const NcPoly& x) const;

private:
    int n_;
    AlgebraPtr global_;
    std::vector<std::vector<int>> charts_;
    std::map<std::vector<int>, LocalizedPtr> objects_;
};

// functoriality, comodule morphisms, injectivity up to D
std::vector<SubCheck> verify_sheaf(const SheafModel& S, int D);

struct PullbackReport {
    bool pass = false;
    std::size_t equalizer_dim = 0;
    std::size_t global_dim = 0;
    bool global_in_both = false;
    std::string witness;
};
// n = 2: the degree <= D part of O_q(SL_2) versus pairs agreeing on U_12.
PullbackReport global_sections_pullback(int D, std::uint64_t seed = 0);

// J_1(p11 det_q(p_ab)) == det_q(a) in the localization of base at d_1.
SubCheck factorization_identity(int n, AlgebraFamily base);

// Words over the generators of a presentation up to length L, all of them
// when there are at most `cap`, otherwise a seeded sample.
std::vector<Word> sample_words(const std::vector<Letter>& letters, int L, std::size_t cap, std::uint64_t seed);

}  // namespace qpb
