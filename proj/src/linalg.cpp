#include "qpb/linalg.hpp"

#include <random>
#include <unordered_map>

namespace qpb {

std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b) {
    unsigned __int128 r = static_cast<unsigned __int128>(a) * b;
    std::uint64_t lo = static_cast<std::uint64_t>(r & ModPoint::P);
    std::uint64_t hi = static_cast<std::uint64_t>(r >> 61);
    std::uint64_t s = lo + hi;
    if (s >= ModPoint::P) s -= ModPoint::P;
    return s;
}

std::uint64_t mod_pow(std::uint64_t a, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e) {
        if (e & 1) r = mod_mul(r, a);
        a = mod_mul(a, a);
        e >>= 1;
    }
    return r;
}

std::uint64_t mod_inv(std::uint64_t a) { return mod_pow(a, ModPoint::P - 2); }

namespace {

std::uint64_t reduce_z(const mpz_class& z) {
    // fdiv gives the non-negative residue
    return mpz_fdiv_ui(z.get_mpz_t(), ModPoint::P);
}

std::uint64_t pow_signed(std::uint64_t base, int e) {
    std::uint64_t v = mod_pow(base, static_cast<std::uint64_t>(e < 0 ? -static_cast<long>(e) : e));
    return e < 0 ? mod_inv(v) : v;
}

}  // namespace

ModPoint ModPoint::random(std::uint64_t seed) {
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + 12345);
    ModPoint p;
    p.q = 2 + rng() % (P - 3);
    for (int j = 1; j <= 9; ++j)
        for (int k = j + 1; k <= 9; ++k) p.phases[phase_code(j, k)] = 2 + rng() % (P - 3);
    return p;
}

std::uint64_t ModPoint::eval(const Scalar& s) const {
    std::uint64_t acc = 0;
    for (auto& [m, c] : s.terms()) {
        std::uint64_t v = mod_mul(reduce_z(c.get_num()), mod_inv(reduce_z(c.get_den())));
        v = mod_mul(v, pow_signed(q, m.q));
        for (auto& [code, e] : m.g) {
            auto it = phases.find(code);
            std::uint64_t g = it == phases.end() ? 3 : it->second;
            v = mod_mul(v, pow_signed(g, e));
        }
        acc += v;
        if (acc >= P) acc -= P;
    }
    return acc;
}

void SparseMatrix::add_column(const Column& c) {
    std::vector<std::pair<std::size_t, Scalar>> col;
    for (auto& [k, s] : c) {
        if (s.is_zero()) continue;
        auto [it, fresh] = row_ids_.try_emplace(k, row_ids_.size());
        (void)fresh;
        col.emplace_back(it->second, s);
    }
    cols_.push_back(std::move(col));
}

std::size_t SparseMatrix::rank_at(const ModPoint& pt) const {
    // Column-by-column elimination against stored pivot columns.
    std::unordered_map<std::size_t, std::vector<std::pair<std::size_t, std::uint64_t>>> pivots;
    std::size_t rank = 0;
    for (auto& col : cols_) {
        std::map<std::size_t, std::uint64_t> v;
        for (auto& [r, s] : col) {
            std::uint64_t x = pt.eval(s);
            if (!x) continue;
            auto& slot = v[r];
            slot = (slot + x) % ModPoint::P;
        }
        for (;;) {
            while (!v.empty() && v.begin()->second == 0) v.erase(v.begin());
            if (v.empty()) break;
            auto [r, x] = *v.begin();
            auto it = pivots.find(r);
            if (it == pivots.end()) {
                // normalize so the pivot entry is 1
                std::uint64_t inv = mod_inv(x);
                std::vector<std::pair<std::size_t, std::uint64_t>> stored;
                for (auto& [rr, xx] : v)
                    if (xx) stored.emplace_back(rr, mod_mul(xx, inv));
                pivots.emplace(r, std::move(stored));
                ++rank;
                break;
            }
            for (auto& [rr, xx] : it->second) {
                std::uint64_t sub = mod_mul(xx, x);
                auto& slot = v[rr];
                slot = (slot + ModPoint::P - sub) % ModPoint::P;
            }
        }
    }
    return rank;
}

}  // namespace qpb
