#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qpb/bundle.hpp"
#include "qpb/report.hpp"
#include "qpb/twist.hpp"

namespace qpb {

struct SuiteOptions {
    int n = 2;
    int k = 0;       // 0: every chart
    int degree = 0;  // 0: default_degree(n)
    std::uint64_t seed = 0;
    mpq_class q = 1;  // classical suite specializes here
    std::optional<CocycleSpec> theta;
    std::string theta_text;
};

// 6 for n = 2, 4 for n = 3, 3 beyond.
int default_degree(int n);

const std::vector<std::string>& suite_names();
// "all" runs every suite and prefixes check ids with the suite name.
// Throws std::invalid_argument on an unknown name.
SuiteReport run_suite(const std::string& name, const SuiteOptions& o);

// Pieces shared with the tests.
SubCheck check_coassociativity(const Algebra& A, const std::vector<Word>& words);
SubCheck check_counit(const Algebra& A, const std::vector<Word>& words);
SubCheck check_antipode_axioms(const Algebra& A, const std::vector<Word>& words);
// Generators plus up to `cap` sampled words of length <= L.
std::vector<Word> hopf_words(const Algebra& A, int L, std::size_t cap, std::uint64_t seed);

SubCheck check_det_central(const Algebra& M);
SubCheck check_det_grouplike(const Algebra& M);
// Row and column permutation sums agree, for det and every 2x2 minor.
SubCheck check_det_forms(const Algebra& M);
// det = sum_i (-q)^(1-i) a[i,1] D(rows != i; cols 2..n)
SubCheck check_laplace_first_column(const Algebra& M);

// nf(xy - yx) vanishes for every pair of generators after q -> q_value,
// g -> 1.
SubCheck commutativity_sweep(const Presentation& P, const mpq_class& q_value);

// Rule `index` of O_q(M_n) with its leading rhs coefficient doubled: caught
// when Delta stops respecting it or the rules stop being confluent.
SubCheck manin_corruption(int n, std::size_t index);
// Image of l under j_k doubled; caught when verify_cleaving fails.
SubCheck cleaving_corruption(int n, int k, const Letter& l);

}  // namespace qpb
