#pragma once

#include <functional>
#include <map>
#include <mutex>
#include <vector>

#include "qpb/ring.hpp"

namespace qpb {

using Legs = std::vector<const Ring*>;

// Reduce every leg in its own ring.
TensorPoly reduce_legs(const TensorPoly& t, const Legs& legs);
// Legwise product, each leg reduced.
TensorPoly tensor_mul_reduced(const TensorPoly& a, const TensorPoly& b, const Legs& legs);

// Replace leg `leg` by f(word); f returns a tensor of some rank m and the
// result has rank + m - 1 legs.
TensorPoly expand_leg(const TensorPoly& t, std::size_t leg, const std::function<TensorPoly(const Word&)>& f);
// Apply a linear map to one leg, keeping the rank.
TensorPoly map_leg(const TensorPoly& t, std::size_t leg, const std::function<NcPoly(const Word&)>& f);
// Multiply legs i and i+1 together in `ring`.
TensorPoly merge_legs(const TensorPoly& t, std::size_t i, const Ring& ring);
// Rank-1 tensor back to a polynomial.
NcPoly to_poly(const TensorPoly& t);
TensorPoly as_tensor(const NcPoly& p);

// Multiplicative (or anti-multiplicative) extension of a letter table into
// a ring. Word images are memoized by prefix.
class AlgebraMap {
public:
    AlgebraMap(const Ring& target, std::function<NcPoly(const Letter&)> image, bool anti = false)
        : target_(&target), image_(std::move(image)), anti_(anti) {}

    NcPoly operator()(const NcPoly& p) const;
    NcPoly word(const Word& w) const;
    const Ring& target() const { return *target_; }

private:
    const Ring* target_;
    std::function<NcPoly(const Letter&)> image_;
    bool anti_;
    mutable std::recursive_mutex mu_;
    mutable std::map<Word, NcPoly, WordLess> memo_;
};

// Same for maps into a tensor product of rings.
class TensorAlgebraMap {
public:
    TensorAlgebraMap(Legs legs, std::function<TensorPoly(const Letter&)> image)
        : legs_(std::move(legs)), image_(std::move(image)) {}

    TensorPoly operator()(const NcPoly& p) const;
    TensorPoly word(const Word& w) const;
    const Legs& legs() const { return legs_; }

private:
    Legs legs_;
    std::function<TensorPoly(const Letter&)> image_;
    mutable std::recursive_mutex mu_;
    mutable std::map<Word, TensorPoly, WordLess> memo_;
};

}  // namespace qpb
