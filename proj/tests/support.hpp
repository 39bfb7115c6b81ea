#pragma once

// Random generators and brute-force oracles shared by the test binaries.
// The oracles avoid the library's matching, enumeration and elimination
// code paths so that they can be compared against them.

#include <random>
#include <vector>

#include "diop/presentation.hpp"
#include "diop/psi.hpp"

namespace diop::testing {

using Rng = std::mt19937_64;

// Random monomial with exactly `weight` vertices and root color `root`.
// Returns nullopt if no generator fits after a few attempts.
std::optional<Monomial> random_monomial(const Alphabet& alpha, Rng& rng, int weight, Color root);

// Random valid graft of s into leaf `leaf` of t.
Monomial random_graft(const Alphabet& alpha, Rng& rng, const Monomial& t, int leaf, const Monomial& s);

// Counts occurrences of pattern in host by trying every connected set of
// host vertices of the pattern's size and cutting it out by hand.
int brute_force_divisor_count(const Alphabet& alpha, const Monomial& host, const Monomial& pattern);

// All monomials of (sig, weight), built by grafting corollas into every leaf
// of every lighter monomial in every admissible way.
std::vector<Monomial> brute_force_monomials(const Alphabet& alpha, const Signature& sig, int weight);

// Rank of a dense rational matrix by plain Gaussian elimination.
int dense_rank(std::vector<std::vector<Rational>> rows);

// dim of a block as #monomials - rank of {c[lhs - rhs]} over every context c
// and every rule, using brute_force_monomials and dense_rank. Rule
// instances are produced by grafting into rule sides rather than by
// matching.
long brute_force_dim(const Presentation& p, const Signature& sig, int weight);

// Random dioperadic tree with `vertices` vertices over generators of d.
DioperadTree random_dtree(const DioperadPresentation& d, Rng& rng, int vertices);

// Canonical text of a dioperadic tree up to renaming of vertices: a sorted
// edge list keyed by the labels reachable through each slot.
std::string dtree_fingerprint(const DioperadPresentation& d, const DioperadTree& t);

}  // namespace diop::testing
