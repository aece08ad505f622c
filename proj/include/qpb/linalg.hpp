#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qpb/scalar.hpp"

namespace qpb {

// Evaluation of the coefficient ring at a point mod p = 2^61 - 1.
struct ModPoint {
    static constexpr std::uint64_t P = (std::uint64_t(1) << 61) - 1;
    std::uint64_t q;
    std::map<std::uint16_t, std::uint64_t> phases;  // missing phases read as fresh values

    static ModPoint random(std::uint64_t seed);
    std::uint64_t eval(const Scalar& s) const;
};

std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b);
std::uint64_t mod_pow(std::uint64_t a, std::uint64_t e);
std::uint64_t mod_inv(std::uint64_t a);

// Columns are sparse vectors over string row keys.
class SparseMatrix {
public:
    using Column = std::vector<std::pair<std::string, Scalar>>;
    void add_column(const Column& c);
    std::size_t cols() const { return cols_.size(); }
    std::size_t rows() const { return row_ids_.size(); }
    // Rank of the specialized matrix; never exceeds the rank over the
    // fraction field.
    std::size_t rank_at(const ModPoint& pt) const;

private:
    std::map<std::string, std::size_t> row_ids_;
    std::vector<std::vector<std::pair<std::size_t, Scalar>>> cols_;
};

}  // namespace qpb
