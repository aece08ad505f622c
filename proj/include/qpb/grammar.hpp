#pragma once

#include <functional>
#include <set>
#include <stdexcept>
#include <string>

#include "qpb/poly.hpp"

namespace qpb {

// Which letters an input may use.
struct Descriptor {
    std::string name = "free";
    int n = 2;
    std::set<Family> families{Family::A};
    std::set<int> inverted;  // indices i with d[i]^-1 admitted
    int parabolic_r = 1;     // p[i,j] is excluded when i > r and j <= r

    bool admits(const Letter& l) const;
    // Empty string when admitted, otherwise the reason.
    std::string why_not(const Letter& l) const;
};

class ParseError : public std::invalid_argument {
public:
    ParseError(std::size_t pos, const std::string& what)
        : std::invalid_argument(what + (pos == std::string::npos ? std::string()
                                                                 : " at position " + std::to_string(pos))),
          pos_(pos) {}
    std::size_t position() const { return pos_; }

private:
    std::size_t pos_;
};

NcPoly parse(const std::string& text, const Descriptor& ctx);
// Scalar-only input, used for theta files and --q.
Scalar parse_scalar(const std::string& text);

using WordOrder = std::function<bool(const Word&, const Word&)>;

std::string format_letter(const Letter& l);
std::string format_word(const Word& w);
std::string format_coeff_term(const Scalar& c, const std::string& body, bool first);
std::string format(const NcPoly& p, const WordOrder& order = {});
std::string format(const TensorPoly& t);

}  // namespace qpb
