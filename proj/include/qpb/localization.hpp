#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "qpb/algebras.hpp"
#include "qpb/linalg.hpp"

namespace qpb {

// One term of x * d_i^-1 = sum c * d_i^-power * word.
struct PushTerm {
    int power;
    Word word;
    Scalar c;
};

// O_q(M_n) or O_q(SL_n) with d_i = a[i,1] inverted for i in a chosen set.
// Elements are kept as d^-m * w: a prefix of inverse letters in build order
// followed by a reduced base word. Such forms are not unique, so equality
// goes through is_zero, which clears denominators.
class LocalizedAlgebra : public Ring {
public:
    LocalizedAlgebra(AlgebraPtr base, std::vector<int> build_order);

    const std::string& name() const override { return name_; }
    const Descriptor& descriptor() const override { return desc_; }
    NcPoly normal_form(const NcPoly& p) const override;
    NcPoly mul(const NcPoly& a, const NcPoly& b) const override;
    bool is_zero(const NcPoly& p) const override;
    WordOrder order() const override;

    const Algebra& base() const { return *base_; }
    AlgebraPtr base_ptr() const { return base_; }
    const std::vector<int>& build_order() const { return order_; }
    bool inverts(int i) const;
    int n() const { return base_->n(); }

    // x * d_i^-1 for a base letter x.
    std::vector<PushTerm> push_letter(const Letter& x, int i) const;
    // The derived rule as a polynomial: x * d_i^-1 -> rhs.
    NcPoly push_rule(const Letter& x, int i) const;
    // d_j^-1 d_i^-1 = swap(j,i) d_i^-1 d_j^-1
    Scalar swap(int j, int i) const;
    // Every push rule times d_i^E on the left and d_i on the right agrees
    // with the base algebra; every swap factor as well. Empty on success.
    std::vector<std::string> self_check() const;

    // Inverse exponents per index of a term's prefix (indexed 1..n).
    std::vector<int> exponents(const Word& w) const;
    std::vector<int> max_exponents(const NcPoly& p) const;
    // d^M in index order, as a base word.
    Word denominator(const std::vector<int>& M) const;
    // Base-algebra numerator nf(d^M * x); requires M >= max_exponents(x).
    NcPoly clear(const NcPoly& x, const std::vector<int>& M) const;

    // Right comodule structure over O_q(P): matrix letters via (id (x) pi)Delta,
    // d_i^-1 -> d_i^-1 (x) p[1,1]^-1.
    TensorPoly coaction(const NcPoly& p) const;
    AlgebraPtr parabolic() const { return P_; }
    // Zero test on F (x) ... tensors, clearing denominators on leg 0.
    bool tensor_is_zero(const TensorPoly& t, const Legs& others) const;

    Word make_word(const std::vector<int>& exps, const Word& base) const;
    Word base_part(const Word& w) const;

private:
    using Push = std::vector<std::pair<std::pair<int, Word>, Scalar>>;
    const Push& push_word(const Word& u, int i) const;
    Push push_pow(const Word& u, int i, int r) const;
    NcPoly canonicalize(const std::vector<int>& exps, const NcPoly& base_poly, const Scalar& c) const;
    NcPoly word_nf(const Word& w) const;
    NcPoly mul_canonical(const NcPoly& X, const NcPoly& Y) const;
    bool is_canonical(const Word& w) const;
    std::size_t pos(int i) const;

    AlgebraPtr base_;
    AlgebraPtr P_;
    std::vector<int> order_;
    std::string name_;
    Descriptor desc_;
    mutable std::recursive_mutex mu_;
    mutable std::map<std::pair<Word, int>, Push> push_memo_;
    mutable std::map<Word, NcPoly, WordLess> nf_memo_;
    std::unique_ptr<TensorAlgebraMap> coact_;
};

using LocalizedPtr = std::shared_ptr<const LocalizedAlgebra>;
LocalizedPtr localize(AlgebraPtr base, std::vector<int> build_order);
// Cached on (base family, n, order).
LocalizedPtr localized(AlgebraFamily f, int n, std::vector<int> build_order);

struct OrderReport {
    bool pass = true;
    std::size_t words = 0;
    std::size_t orders = 0;
    std::string witness;
};
// Compares numerators of every word (exhaustive when small, else sampled)
// across all build orders of I.
OrderReport check_order_independence(AlgebraFamily f, int n, const std::vector<int>& I, int D,
                                     std::uint64_t seed = 0);

struct CoinvariantReport {
    bool pass = false;
    std::size_t window = 0;       // candidate words
    std::size_t span_dim = 0;     // dim of their span
    std::size_t kernel_dim = 0;   // dim of the coinvariants inside the span
    std::size_t expected_dim = 0; // dim of span of monomials in d_j d_i^-1
    bool monomials_coinvariant = false;
    bool monomials_in_window = false;
    std::string witness;
};
// Coinvariants of F(U_i) among d_i^-m w, w a reduced base word, m <= L,
// |w| <= L, with column weight a multiple of (1,...,1).
CoinvariantReport coinvariants(AlgebraFamily f, int n, int i, int L, std::uint64_t seed = 0);

// Non-decreasing base words of length <= L that are in normal form.
std::vector<Word> normal_words(const Presentation& P, int L);

}  // namespace qpb
