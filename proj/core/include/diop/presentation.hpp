#pragma once

// Presentations by generators and oriented rewrite rules, and the text
// format they are read from.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "diop/order.hpp"
#include "diop/polynomial.hpp"

namespace diop {

struct RewriteRule {
  std::string name;
  Monomial lhs;
  Polynomial rhs;
};

enum class Certificate { none, order, measure };

struct Presentation {
  std::string name;
  Alphabet alpha;
  std::vector<RewriteRule> rules;
  // The declared order. For measure-certified systems it ranks generators by
  // base name and serves as the shape order.
  std::optional<MonomialOrder> order;
  std::vector<std::string> order_names;  // as written on the order line
  std::vector<std::string> measures;     // non-empty: measure certificate

  Certificate certificate() const;
  bool is_monomial() const;
  const MonomialOrder& require_order() const;
};

// Built-in measures.
int dotted_internal_edges(const Alphabet& alpha, const Monomial& m);
// Compares the color-stripped monomials of a and b under the presentation's
// order, with generators ranked by base name.
int compare_shapes(const Presentation& p, const Monomial& a, const Monomial& b);

// True if rewriting `from` into `to` is certified (order decreases or the
// measure tuple decreases lexicographically).
bool certified_step(const Presentation& p, const Monomial& from, const Monomial& to);

// Throws InputError naming the first rule whose right side is not strictly
// below its left side.
void check_certificate(const Presentation& p);

// Orients lhs - rest = 0 on its order-largest monomial, normalized to
// coefficient 1. Returns nullopt for the zero polynomial.
std::optional<RewriteRule> orient(const Presentation& p, const std::string& name, const Polynomial& rel);

Presentation parse_presentation(std::string_view text);
std::string serialize_presentation(const Presentation& p);

int max_rule_weight(const Presentation& p);

}  // namespace diop
