#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qpb/maps.hpp"
#include "qpb/presentation.hpp"

namespace qpb {

enum class AlgebraFamily { Mn, GLn, SLn, P, Torus, ProjectiveRing, Parabolic };

struct AlgebraSpec {
    AlgebraFamily family = AlgebraFamily::SLn;
    int n = 2;
    int r = 1;           // Parabolic: kills p[i,j] with i > r, j <= r
    bool twist = false;  // ProjectiveRing only; other families go through twist.hpp
    // Negative control: multiply the first rhs coefficient of seed rule
    // `index` by `factor`.
    std::optional<std::pair<std::size_t, Scalar>> corrupt;
};

std::string family_name(AlgebraFamily f);
// Accepts mq, glq, slq, pq, torus, projq, parq.
AlgebraFamily family_from_name(const std::string& s);

class Algebra;
using AlgebraPtr = std::shared_ptr<const Algebra>;

// A presentation plus, when defined, Hopf structure tables. Coproduct,
// counit and antipode are extended from the tables on demand.
class Algebra {
public:
    Algebra(AlgebraSpec spec, std::shared_ptr<const Presentation> pres);

    const AlgebraSpec& spec() const { return spec_; }
    const Presentation& pres() const { return *pres_; }
    std::shared_ptr<const Presentation> pres_ptr() const { return pres_; }
    const std::string& name() const { return pres_->name(); }
    int n() const { return spec_.n; }

    bool has_coproduct() const { return !delta_table_.empty(); }
    bool has_antipode() const { return !antipode_table_.empty(); }

    TensorPoly coproduct(const NcPoly& p) const;
    Scalar counit(const NcPoly& p) const;
    NcPoly antipode(const NcPoly& p) const;

    const std::map<Letter, TensorPoly>& coproduct_table() const { return delta_table_; }
    const std::map<Letter, Scalar>& counit_table() const { return eps_table_; }
    const std::map<Letter, NcPoly>& antipode_table() const { return antipode_table_; }

    void set_hopf(std::map<Letter, TensorPoly> delta, std::map<Letter, Scalar> eps,
                  std::map<Letter, NcPoly> antipode);

private:
    AlgebraSpec spec_;
    std::shared_ptr<const Presentation> pres_;
    std::map<Letter, TensorPoly> delta_table_;
    std::map<Letter, Scalar> eps_table_;
    std::map<Letter, NcPoly> antipode_table_;
    std::unique_ptr<TensorAlgebraMap> delta_;
    std::unique_ptr<AlgebraMap> antipode_;
};

AlgebraPtr build(const AlgebraSpec& spec, PresentationOptions opts = {});

// Cached builds keyed by (family, n, r, twist); corrupt specs bypass the cache.
AlgebraPtr cached(const AlgebraSpec& spec);
AlgebraPtr cached(AlgebraFamily f, int n, int r = 1);

// Entry letter of row i, column j in the ring's matrix family (A or P);
// nullopt when that entry is zero there.
std::optional<Letter> entry(const Descriptor& d, int i, int j);

// Quantum minor with rows I and columns J, coefficients (-q)^(-inversions),
// rows in increasing order. Unreduced free polynomial; zero entries drop.
NcPoly qminor_free(const Descriptor& d, const std::vector<int>& rows, const std::vector<int>& cols);
// Same sum with the permutation acting on rows instead of columns.
NcPoly qminor_free_columns(const Descriptor& d, const std::vector<int>& rows, const std::vector<int>& cols);
NcPoly qminor(const Ring& ring, const std::vector<int>& rows, const std::vector<int>& cols);
NcPoly qdet(const Ring& ring);

// a[i,j] -> p[i,j] (zero on the killed block). Maps O_q(SL_n) -> O_q(P),
// and O_q(M_n) -> its parabolic quotient.
class Projection {
public:
    Projection(AlgebraPtr source, AlgebraPtr target);
    NcPoly operator()(const NcPoly& p) const { return map_(p); }
    // (id (x) pi) o Delta
    TensorPoly coaction(const NcPoly& p) const { return coact_(p); }
    const Algebra& source() const { return *src_; }
    const Algebra& target() const { return *dst_; }
    NcPoly letter_image(const Letter& l) const;

private:
    AlgebraPtr src_, dst_;
    AlgebraMap map_;
    TensorAlgebraMap coact_;
};

// Torus projection: a[i,j] -> delta_ij t[i]; p[1,1]^-1 -> t[1]^-1.
class TorusProjection {
public:
    TorusProjection(AlgebraPtr source, AlgebraPtr torus);
    NcPoly operator()(const NcPoly& p) const { return map_(p); }
    NcPoly letter_image(const Letter& l) const;

private:
    AlgebraPtr src_, torus_;
    AlgebraMap map_;
};

struct MinorCheck {
    std::vector<int> rows;
    bool pass;
    std::string witness;
};
// (id (x) pi) Delta(D_I) == D_I (x) pi(D_{1..r}) for every r-subset I, in
// O_q(M_n) over its parabolic quotient.
std::vector<MinorCheck> grassmannian_check(int n, int r);

std::vector<std::vector<int>> subsets(int n, int size);
std::vector<int> range1(int lo, int hi);  // lo..hi inclusive

}  // namespace qpb
