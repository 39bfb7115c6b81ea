#pragma once

// Exhaustive generation of the monomials of one (signature, weight) block.

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "diop/trees.hpp"

namespace diop {

class Rewriter;

class Enumerator {
 public:
  // With a rewriter, only irreducible monomials are produced. guard > 0
  // bounds the size of every generated sub-block (GuardExceeded).
  Enumerator(const Alphabet& alpha, Signature sig, const Rewriter* filter = nullptr, size_t guard = 0);

  const std::vector<Monomial>& block(int weight);

 private:
  const std::vector<Monomial>& get(std::uint32_t mask, Color c, int w);
  void children(const Generator& g, std::uint32_t rest, int j, int wrest, std::vector<std::uint32_t>& masks,
                std::vector<const std::vector<Monomial>*>& parts, int gen, std::vector<Monomial>& out);
  void emit(int gen, const std::vector<const std::vector<Monomial>*>& parts, std::vector<Monomial>& out);

  const Alphabet& alpha_;
  Signature sig_;
  const Rewriter* filter_;
  size_t guard_;
  std::unordered_map<std::uint64_t, std::vector<Monomial>> memo_;
};

std::vector<Monomial> enumerate_monomials(const Alphabet& alpha, const Signature& sig, int weight, size_t guard = 0);

// Largest weight a monomial of the given arity can have. Throws InputError
// if unary generators can be chained indefinitely.
int weight_bound(const Alphabet& alpha, int arity);

// Every signature with `arity` inputs.
std::vector<Signature> all_signatures(int arity);

}  // namespace diop
