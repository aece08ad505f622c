#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "qpb/scalar.hpp"

namespace qpb {

enum class Family : std::uint8_t {
    A = 0,       // a[i,j]
    InvD = 1,    // d[i]^-1, inverse of a[i,1]
    P = 2,       // p[i,j]
    InvP11 = 3,  // p[1,1]^-1
    T = 4,       // t[i]
    InvT = 5,    // t[i]^-1
    InvDet = 6,  // det^-1
    X = 7,       // x[i]
};

struct Letter {
    Family fam = Family::A;
    std::uint8_t i = 0;
    std::uint8_t j = 0;

    std::uint32_t code() const {
        return (std::uint32_t(fam) << 16) | (std::uint32_t(i) << 8) | j;
    }
    auto operator<=>(const Letter& o) const { return code() <=> o.code(); }
    bool operator==(const Letter& o) const { return code() == o.code(); }

    bool is_inverse() const {
        return fam == Family::InvD || fam == Family::InvP11 || fam == Family::InvT ||
               fam == Family::InvDet;
    }
    std::string str() const;
};

inline Letter a_(int i, int j) { return {Family::A, std::uint8_t(i), std::uint8_t(j)}; }
inline Letter dinv_(int i) { return {Family::InvD, std::uint8_t(i), 0}; }
inline Letter p_(int i, int j) { return {Family::P, std::uint8_t(i), std::uint8_t(j)}; }
inline Letter pinv_() { return {Family::InvP11, 1, 1}; }
inline Letter t_(int i) { return {Family::T, std::uint8_t(i), 0}; }
inline Letter tinv_(int i) { return {Family::InvT, std::uint8_t(i), 0}; }
inline Letter detinv_() { return {Family::InvDet, 0, 0}; }
inline Letter x_(int i) { return {Family::X, std::uint8_t(i), 0}; }

using Word = std::vector<Letter>;

// Degree first, then lexicographic on letter codes. Presentations use their
// own generator ranks for rewriting; this order only fixes storage.
struct WordLess {
    bool operator()(const Word& a, const Word& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
};

// Net degree: letters count +1, inverse letters -1.
int word_degree(const Word& w);

class NcPoly {
public:
    using Map = std::map<Word, Scalar, WordLess>;

    NcPoly() = default;
    NcPoly(const Scalar& c);
    NcPoly(const Letter& l);
    NcPoly(const Word& w, const Scalar& c = Scalar(1));

    const Map& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    std::size_t max_length() const;
    Scalar coeff(const Word& w) const;

    void add(const Word& w, const Scalar& c);
    void add(Word&& w, const Scalar& c);

    NcPoly& operator+=(const NcPoly& o);
    NcPoly& operator-=(const NcPoly& o);
    NcPoly operator-() const;
    friend NcPoly operator+(NcPoly a, const NcPoly& b) { return a += b; }
    friend NcPoly operator-(NcPoly a, const NcPoly& b) { return a -= b; }
    // Free-algebra product (concatenation).
    friend NcPoly operator*(const NcPoly& a, const NcPoly& b);
    friend NcPoly operator*(const Scalar& c, const NcPoly& p);
    bool operator==(const NcPoly& o) const { return terms_ == o.terms_; }

    NcPoly map_scalars(const std::function<Scalar(const Scalar&)>& f) const;

private:
    Map terms_;
};

// Element of a tensor power; one word per leg.
class TensorPoly {
public:
    using Key = std::vector<Word>;
    struct KeyLess {
        bool operator()(const Key& a, const Key& b) const;
    };
    using Map = std::map<Key, Scalar, KeyLess>;

    explicit TensorPoly(std::size_t rank = 2) : rank_(rank) {}
    static TensorPoly pure(const std::vector<NcPoly>& legs);

    std::size_t rank() const { return rank_; }
    const Map& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add(const Key& k, const Scalar& c);
    TensorPoly& operator+=(const TensorPoly& o);
    TensorPoly& operator-=(const TensorPoly& o);
    friend TensorPoly operator+(TensorPoly a, const TensorPoly& b) { return a += b; }
    friend TensorPoly operator-(TensorPoly a, const TensorPoly& b) { return a -= b; }
    friend TensorPoly operator*(const Scalar& c, const TensorPoly& t);
    bool operator==(const TensorPoly& o) const { return rank_ == o.rank_ && terms_ == o.terms_; }

private:
    std::size_t rank_;
    Map terms_;
};

// Legwise concatenation, no reduction. Throws on rank mismatch.
TensorPoly tensor_mul(const TensorPoly& u, const TensorPoly& v);

}  // namespace qpb
