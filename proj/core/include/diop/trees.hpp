#pragma once

// Colored shuffle and planar tree monomials.
//
// A monomial is stored as its preorder code: a non-negative entry is a
// generator index into the owning Alphabet, a negative entry is a leaf that
// packs its label and color. Children follow their parent in slot order, so
// the code alone determines the tree once the generator arities are known.

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace diop {

enum class Color : std::uint8_t { straight = 0, dotted = 1 };

char color_char(Color c);
Color color_from_char(char c);  // 's' or 'd'; throws InputError otherwise

struct Signature {
  std::vector<Color> inputs;
  Color output = Color::straight;

  auto operator<=>(const Signature&) const = default;
  bool operator==(const Signature&) const = default;
  std::string str() const;  // "(s,d)->s"
  int arity() const { return static_cast<int>(inputs.size()); }
};

Signature parse_signature(std::string_view text);

struct Generator {
  std::string name;
  Signature sig;
  int weight = 1;
  int hdegree = 0;

  int arity() const { return sig.arity(); }
};

enum class Mode { shuffle, planar };

std::string mode_name(Mode m);

struct Alphabet {
  Mode mode = Mode::shuffle;
  std::vector<Generator> gens;

  int index_of(std::string_view name) const;  // -1 if absent
  const Generator& gen(int i) const { return gens[static_cast<size_t>(i)]; }
  int size() const { return static_cast<int>(gens.size()); }
};

struct Monomial {
  std::vector<std::int32_t> code;

  static std::int32_t leaf_code(int label, Color c) { return -(2 * label + static_cast<int>(c)); }
  static bool is_leaf(std::int32_t x) { return x < 0; }
  static int leaf_label(std::int32_t x) { return (-x) / 2; }
  static Color leaf_color(std::int32_t x) { return static_cast<Color>((-x) % 2); }

  static Monomial identity(Color c) { return Monomial{{leaf_code(1, c)}}; }

  bool operator==(const Monomial&) const = default;
  auto operator<=>(const Monomial&) const = default;
};

struct MonomialHash {
  size_t operator()(const Monomial& m) const noexcept;
};

// Navigation structure over a monomial. Positions are indices into code.
class TreeView {
 public:
  TreeView(const Alphabet& alpha, const Monomial& m);

  const Monomial& monomial() const { return *m_; }
  int size() const { return static_cast<int>(parent_.size()); }
  bool is_leaf(int pos) const { return Monomial::is_leaf(m_->code[static_cast<size_t>(pos)]); }
  int gen(int pos) const { return m_->code[static_cast<size_t>(pos)]; }
  int label(int pos) const { return Monomial::leaf_label(m_->code[static_cast<size_t>(pos)]); }
  int parent(int pos) const { return parent_[static_cast<size_t>(pos)]; }
  int end(int pos) const { return end_[static_cast<size_t>(pos)]; }
  int min_label(int pos) const { return min_[static_cast<size_t>(pos)]; }
  int slot(int pos) const { return slot_[static_cast<size_t>(pos)]; }
  Color out_color(int pos) const;
  const std::vector<int>& children(int pos) const { return children_[static_cast<size_t>(pos)]; }
  const std::vector<int>& internal() const { return internal_; }
  const std::vector<int>& leaves_in_order() const { return leaves_; }
  int leaf_count() const { return static_cast<int>(leaves_.size()); }

 private:
  int build(int pos, int parent, int slot);

  const Alphabet* alpha_;
  const Monomial* m_;
  std::vector<int> parent_, end_, min_, slot_;
  std::vector<std::vector<int>> children_;
  std::vector<int> internal_;
  std::vector<int> leaves_;
};

// Structural checks that do not depend on label conventions. Throws
// InputError when the code cannot be read as a tree.
void check_well_formed(const Alphabet& alpha, const Monomial& m);

int arity(const Monomial& m);
int vertex_count(const Monomial& m);
int weight(const Alphabet& alpha, const Monomial& m);
Signature signature(const Alphabet& alpha, const Monomial& m);

struct Validation {
  bool ok = true;
  std::string what;  // first failed invariant
  int position = -1;  // offending vertex position in the code, -1 if global

  explicit operator bool() const { return ok; }
};

Validation validate(const Alphabet& alpha, const Monomial& m);

// Term syntax: INT | NAME '(' term (',' term)* ')'. Colors come from
// generator signatures; a bare leaf gets root_color.
Monomial parse_term(const Alphabet& alpha, std::string_view text, Color root_color = Color::straight);
std::string format_term(const Alphabet& alpha, const Monomial& m);

// Relabelling for substitute: inner[i-1] is the new label of leaf i of the
// grafted tree; outer[j-1] is the new label of leaf j of the host (the entry
// for the grafting leaf is ignored).
struct Relabel {
  std::vector<int> inner;
  std::vector<int> outer;
};

Monomial substitute(const Alphabet& alpha, const Monomial& t, int leaf, const Monomial& s, const Relabel& relabel);

struct Embedding {
  std::vector<int> image;  // host positions of pattern internal vertices, pattern preorder
  std::vector<int> hang;   // host position of the subtree at pattern leaf i (index i-1)

  int root() const { return image.front(); }
  std::vector<int> sorted_image() const;
  bool same_as(const Embedding& other) const { return sorted_image() == other.sorted_image(); }
};

// Embeddings of pattern rooted at host position `at` (empty or one element).
std::optional<Embedding> match_at(const TreeView& host, const TreeView& pattern, int at);
std::vector<Embedding> find_divisors(const Alphabet& alpha, const Monomial& host, const Monomial& pattern);
std::vector<Embedding> find_divisors(const TreeView& host, const TreeView& pattern);

// Host with the divisor region replaced by monomial t (t has k leaves that
// receive the hanging subtrees in label order).
Monomial graft_replacement(const TreeView& host, const Embedding& e, const Monomial& t);

// Pattern monomial cut out of host along the embedding.
Monomial extract_divisor(const Alphabet& alpha, const TreeView& host, const Embedding& e);

std::string to_dot(const Alphabet& alpha, const Monomial& m, std::string_view graph_name = "T");

}  // namespace diop
