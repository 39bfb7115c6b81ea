#pragma once

// The coloring functor from cyclic presentations to dioperads, seen on the
// colored shuffle side: colored generators, recoloring rules and maximal
// colorings of caterpillar shapes.

#include <map>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "diop/presentation.hpp"

namespace diop {

enum class ColoringKind { pos_pos, nonneg_pos, nonneg_nonneg, outputs_one, equal, custom };

struct ColoringRule {
  ColoringKind kind = ColoringKind::pos_pos;
  std::set<std::pair<int, int>> table;  // custom only
  int bound = 12;                       // custom only: largest m+n described

  bool allows(int m, int n) const;
  std::string name() const;
  static ColoringRule parse(std::string_view s);  // "pos_pos", "nonneg_pos", ...
};

// Closure under (m,n),(m',n') -> (m+m'-1, n+n'-1) for every composable pair
// (m >= 1, n' >= 1) with m+n and m'+n' at most `bound`.
bool coloring_closed(const ColoringRule& c, int bound);

// (m,n) of a colored corolla: root s gives (#s, 1 + #d), root d gives
// (1 + #s, #d).
std::pair<int, int> corolla_arity(const Signature& sig);

// Colored generators over a single-colored base alphabet.
class ThetaColoring {
 public:
  ThetaColoring(const Alphabet& base, ColoringRule rule);

  const Alphabet& base() const { return base_; }
  const Alphabet& colored() const { return colored_; }
  const ColoringRule& rule() const { return rule_; }

  int colored_index(int base_gen, const Signature& sig) const;  // -1 if not admissible
  int base_of(int colored_gen) const { return base_of_[static_cast<size_t>(colored_gen)]; }

  // Color-stripped monomial in the base alphabet.
  Monomial strip(const Monomial& colored) const;
  // Colors a base monomial; internal[k] is the color of the k-th internal
  // non-root vertex in preorder. Returns nullopt if some vertex is excluded.
  std::optional<Monomial> color(const Monomial& base, const Signature& sig, const std::vector<Color>& internal) const;
  // All admissible colorings of a shape.
  std::vector<Monomial> colorings(const Monomial& base, const Signature& sig) const;
  // The unique admissible coloring whose dotted internal edges are contained
  // in those of every other admissible coloring. Throws InputError if the
  // shape is not a caterpillar, has no admissible coloring or no supremum.
  Monomial max_coloring(const Monomial& base, const Signature& sig) const;

 private:
  Alphabet base_;
  ColoringRule rule_;
  Alphabet colored_;
  std::map<std::pair<int, Signature>, int> index_;
  std::vector<int> base_of_;
};

bool is_caterpillar(const Alphabet& alpha, const Monomial& t);

// Generators, colored relations and recoloring relations, reduced to an
// echelon basis per block and oriented by `order` (names of colored
// generators, decreasing).
Presentation theta_presentation(const Presentation& cyclic, const ColoringRule& c, OrderKind kind,
                                const std::vector<std::string>& order_names = {});

// Recoloring rules plus every coloring of the rules of a caterpillar
// rewriting system, certified by (shape_rank, dotted_internal_edges).
Presentation theta_rules(const Presentation& system, const ColoringRule& c);

}  // namespace diop
