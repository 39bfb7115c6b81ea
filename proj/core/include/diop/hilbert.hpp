#pragma once

// Dimension counting: normal forms, the linear-algebra oracle and
// dioperadic dimension tables.

#include <map>
#include <utility>

#include "diop/presentation.hpp"
#include "diop/series.hpp"

namespace diop {

constexpr size_t kDefaultOracleGuard = 100000;

long count_normal_forms(const Presentation& p, const Signature& sig, int weight);

// #monomials - rank of all rule instances in the block. Rules must be
// homogeneous in weight.
long oracle_dim(const Presentation& p, const Signature& sig, int weight, size_t guard = kDefaultOracleGuard);

// Signature read off for dim P(m,n): s^m d^(n-1) -> s, or s^(m-1) -> d for n = 0.
Signature dioperad_signature(int m, int n);

// automatic: normal forms if the rules are confluent, the oracle otherwise.
enum class DimsMethod { normal_forms, oracle, automatic };

// dim_q P(m,n) for 0 < m+n <= max_total. In planar mode the value is
// symmetrized over all interleavings of the input colors.
std::map<std::pair<int, int>, QPoly> dioperad_dims(const Presentation& p, int max_total, DimsMethod method,
                                                    size_t guard = kDefaultOracleGuard);

// (m+n-2)!^2 / ((m-1)!(n-1)!)
Integer lieb_dim_formula(int m, int n);

}  // namespace diop
