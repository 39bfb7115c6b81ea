#pragma once

// Dioperads: generators with sign symmetries, dioperadic trees, rerooting
// into 2-colored trees and expansion into colored shuffle presentations.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "diop/presentation.hpp"

namespace diop {

// Legs of an (m,n) corolla: inputs are 0..m-1, outputs m..m+n-1.
struct LegPerm {
  std::vector<int> image;  // image[leg] = leg
  int sign = 1;
};

struct DioperadGenerator {
  std::string name;
  int m = 0, n = 0;
  std::vector<LegPerm> symmetry;  // as declared
  int weight = 1;
  int hdegree = 0;

  int legs() const { return m + n; }
  bool is_input(int leg) const { return leg < m; }
};

// Closure of the declared symmetries; throws InputError when a permutation
// is forced to carry both signs.
std::vector<LegPerm> symmetry_group(const DioperadGenerator& g);

struct DioperadTree {
  struct Vertex {
    std::string id;
    int gen = -1;
  };
  struct Edge {
    int from, out;  // vertex, output slot (0-based)
    int to, in;     // vertex, input slot (0-based)
  };
  struct Free {
    int vertex, slot;  // slot 0-based among inputs (or outputs)
    int label;         // 1-based
  };
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  std::vector<Free> inputs, outputs;

  int input_count() const { return static_cast<int>(inputs.size()); }
  int output_count() const { return static_cast<int>(outputs.size()); }
};

struct DioperadTerm {
  Rational coef;
  DioperadTree tree;
};

struct DioperadRelation {
  std::string name;
  std::vector<DioperadTerm> terms;
};

struct DioperadPresentation {
  std::string name;
  std::vector<DioperadGenerator> gens;
  std::vector<DioperadRelation> rels;
  std::string order_line;  // "KIND names..." for the expanded presentation

  int index_of(std::string_view name) const;
};

// Checks slot usage, label bijectivity and the tree property.
void validate_tree(const DioperadPresentation& d, const DioperadTree& t);

// dtree{ ... } body syntax. Generators may be declared inline as NAME(M,N)
// when `d` is non-const and has no such generator yet.
DioperadTree parse_dtree(DioperadPresentation& d, std::string_view text);
std::string format_dtree(const DioperadPresentation& d, const DioperadTree& t);

bool is_dioperad_text(std::string_view text);
DioperadPresentation parse_dioperad(std::string_view text);
std::string serialize_dioperad(const DioperadPresentation& d);

// A leg of the whole tree: a free input or output label.
struct RootLeg {
  bool output = true;
  int label = 1;

  bool operator==(const RootLeg&) const = default;
};
RootLeg parse_root_leg(std::string_view s);  // "out6", "in5"

// Rerooted tree: every vertex remembers the leg that faces the root and the
// leg each child hangs from. Children are in slot order: inputs, then outputs.
struct RootedNode {
  bool leaf = false;
  RootLeg leg;       // leaves: the free leg
  int vertex = -1;   // vertices: index into the dioperadic tree
  int gen = -1;
  int root_leg = -1;             // vertex leg facing the root
  std::vector<int> child_legs;   // vertex leg of each child
  std::vector<RootedNode> children;
  Color color = Color::straight;  // color of the edge toward the root
};

RootedNode reroot(const DioperadPresentation& d, const DioperadTree& t, RootLeg root);
std::string format_rooted(const DioperadPresentation& d, const RootedNode& r);
// Forgets the root and planarity again.
DioperadTree unroot(const DioperadPresentation& d, const RootedNode& r, RootLeg root);

// One colored generator per (generator, root-leg orbit).
struct ColoredGenerator {
  std::string name;
  int dgen;
  int root_leg;
  Signature sig;  // slot colors in the order inputs, then outputs
  int stabilizer_order;
  bool antisymmetric;  // stabilizer carries a nontrivial sign
};
std::vector<ColoredGenerator> psi_generators(const DioperadPresentation& d);

// Shuffle generator table: (dgen, root leg, legs in slot order) -> (generator, sign).
struct ShuffleTable {
  Alphabet alpha;
  std::map<std::tuple<int, int, std::vector<int>>, std::pair<int, int>> entry;
};
ShuffleTable shuffle_generators(const DioperadPresentation& d);

// The colored shuffle presentation: generators from the table, relations
// rerooted at every leg, instantiated over all leaf relabelings and reduced
// to an echelon basis per (signature, weight) block.
Presentation shuffle_expand(const DioperadPresentation& d);

// A rooted tree as a signed shuffle monomial, with typed leaves linearized
// as remaining inputs 1.., then outputs by bar index; `perm` relabels the
// linear labels afterwards (perm[l-1] = new label; empty = identity).
std::pair<Monomial, int> rooted_to_shuffle(const DioperadPresentation& d, const ShuffleTable& table, const RootedNode& r,
                                           RootLeg root, int inputs, int outputs, const std::vector<int>& perm = {});

}  // namespace diop
