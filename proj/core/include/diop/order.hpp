#pragma once

// Admissible orders on tree monomials of one arity signature.

#include <string>
#include <vector>

#include "diop/trees.hpp"

namespace diop {

enum class OrderKind { pathlex, revpathlex, quantumpath };

std::string order_kind_name(OrderKind k);
OrderKind parse_order_kind(std::string_view s);

struct MonomialOrder {
  OrderKind kind = OrderKind::pathlex;
  // rank[g] for generator index g; larger rank = greater letter.
  std::vector<int> rank;
  // quantumpath only: true if generator g reads as the letter y.
  std::vector<bool> is_y;

  // Generators listed first are greatest; unlisted ones follow in
  // declaration order below all listed ones.
  static MonomialOrder make(const Alphabet& alpha, OrderKind kind, const std::vector<std::string>& decreasing = {});
  // Same, but generators are ranked by base name (the part before the first
  // '_'); monomials differing only in colors then compare equal.
  static MonomialOrder make_by_base(const Alphabet& alpha, OrderKind kind, const std::vector<std::string>& decreasing = {});
};

// Negative, zero or positive as a <, =, > b. Throws InputError when the
// signatures differ.
std::string base_name(std::string_view gen_name);

int compare(const Alphabet& alpha, const MonomialOrder& o, const Monomial& a, const Monomial& b);
int compare_unchecked(const Alphabet& alpha, const MonomialOrder& o, const Monomial& a, const Monomial& b);

}  // namespace diop
