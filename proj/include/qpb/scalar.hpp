#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace qpb {

// Exponent key of one coefficient term: a power of q times powers of the
// phase symbols g[j,k] (j < k). Phase exponents are kept sparse and sorted.
struct Mono {
    int q = 0;
    std::vector<std::pair<std::uint16_t, int>> g;

    auto operator<=>(const Mono&) const = default;
    bool operator==(const Mono&) const = default;

    Mono operator*(const Mono& o) const;
    Mono pow(int e) const;
    bool is_one() const { return q == 0 && g.empty(); }
};

inline std::uint16_t phase_code(int j, int k) { return static_cast<std::uint16_t>((j << 8) | k); }
inline int phase_j(std::uint16_t c) { return c >> 8; }
inline int phase_k(std::uint16_t c) { return c & 0xff; }

// Element of Q[q^±1, g[j,k]^±1]. Terms are sorted by Mono and never carry a
// zero coefficient, so structural equality is ring equality.
class Scalar {
public:
    using Term = std::pair<Mono, mpq_class>;

    Scalar() = default;
    Scalar(long v);
    Scalar(int v) : Scalar(static_cast<long>(v)) {}
    Scalar(const mpq_class& v);
    Scalar(const Mono& m, const mpq_class& c);

    static Scalar q(int e = 1);
    // g[j,k]^e; g[k,j] is read as g[j,k]^-1 and g[j,j] as 1.
    static Scalar g(int j, int k, int e = 1);

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_one() const;
    bool is_monomial() const { return terms_.size() == 1; }
    bool is_rational() const { return is_zero() || (is_monomial() && terms_[0].first.is_one()); }
    bool has_phases() const;

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    bool operator==(const Scalar& o) const { return terms_ == o.terms_; }

    // Only monomials are invertible; anything else throws std::domain_error.
    Scalar inverse() const;
    Scalar pow(int e) const;

    // q -> q_value; optionally every g -> 1. Throws on q_value == 0.
    Scalar specialize(const mpq_class& q_value, bool phases_to_one) const;
    // Full evaluation; phases(code) supplies the value of g[j,k].
    mpq_class evaluate(const mpq_class& q_value,
                       const std::function<mpq_class(std::uint16_t)>& phases) const;
    // Replace each phase symbol by a monomial.
    Scalar substitute_phases(const std::function<Scalar(std::uint16_t)>& image) const;

    std::size_t hash() const;
    std::string str() const;

private:
    void normalize();
    std::vector<Term> terms_;
};

std::string format_mono(const Mono& m);
mpq_class rational_pow(const mpq_class& b, int e);

}  // namespace qpb
