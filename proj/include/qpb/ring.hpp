#pragma once

#include <string>

#include "qpb/grammar.hpp"
#include "qpb/poly.hpp"

namespace qpb {

// Anything that can reduce and multiply elements written as NcPoly.
class Ring {
public:
    virtual ~Ring() = default;
    virtual const std::string& name() const = 0;
    virtual const Descriptor& descriptor() const = 0;
    virtual NcPoly normal_form(const NcPoly& p) const = 0;
    // Product of arbitrary (not necessarily reduced) inputs, reduced.
    virtual NcPoly mul(const NcPoly& a, const NcPoly& b) const = 0;
    virtual bool is_zero(const NcPoly& p) const { return normal_form(p).is_zero(); }
    virtual WordOrder order() const { return WordLess{}; }

    bool equal(const NcPoly& a, const NcPoly& b) const { return is_zero(a - b); }
    std::string show(const NcPoly& p) const { return format(p, order()); }
};

}  // namespace qpb
