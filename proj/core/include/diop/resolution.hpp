#pragma once

// Inclusion-exclusion complex of a monomial shuffle operad.

#include <utility>
#include <vector>

#include "diop/hilbert.hpp"
#include "diop/linalg.hpp"
#include "diop/presentation.hpp"

namespace diop {

struct IEChain {
  Monomial base;
  std::vector<Embedding> divisors;  // ordered by sorted vertex image
  std::vector<int> rules;           // rule index of each divisor

  int hdeg() const { return static_cast<int>(divisors.size()); }
  bool operator==(const IEChain& o) const;
};

// Every subset of the relation divisors of every monomial in the block.
// Throws InputError for a presentation with a nonzero right side.
std::vector<IEChain> enumerate_chains(const Presentation& q, const Signature& sig, int weight,
                                      size_t guard = kDefaultOracleGuard);

// Sum over i of (-1)^(i-1) times the chain without divisor i.
std::vector<std::pair<int, IEChain>> differential(const IEChain& c);

// Every internal vertex lies in some divisor and every internal edge lies in
// a single divisor. A lone vertex with no divisor also counts: it is the
// weight-one generator of the complex.
bool is_generator(const Alphabet& alpha, const IEChain& c);

struct ChainComplexBlock {
  Signature sig;
  int weight = 0;
  std::vector<std::vector<IEChain>> bases;  // by hdeg
  // boundary[k] maps hdeg k to hdeg k-1; one sparse row per chain of hdeg k,
  // columns index bases[k-1]. boundary[0] is empty.
  std::vector<std::vector<SparseRow>> boundary;
};

ChainComplexBlock build_block(const Presentation& q, const Signature& sig, int weight,
                              size_t guard = kDefaultOracleGuard);

// True if every composite boundary[k-1] * boundary[k] vanishes.
bool d_squared_zero(const ChainComplexBlock& b);

// (hdeg, rank) for every hdeg with a nonempty chain space.
std::vector<std::pair<int, int>> homology_ranks(const ChainComplexBlock& b);
std::vector<std::pair<int, int>> homology_ranks(const Presentation& q, const Signature& sig, int weight,
                                                size_t guard = kDefaultOracleGuard);

int generator_count(const Alphabet& alpha, const ChainComplexBlock& b);

}  // namespace diop
