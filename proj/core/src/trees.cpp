#include "diop/trees.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "diop/rational.hpp"

namespace diop {

char color_char(Color c) { return c == Color::straight ? 's' : 'd'; }

Color color_from_char(char c) {
  if (c == 's') return Color::straight;
  if (c == 'd') return Color::dotted;
  throw InputError(std::string("unknown color '") + c + "' (expected s or d)");
}

std::string Signature::str() const {
  std::string s = "(";
  for (size_t i = 0; i < inputs.size(); ++i) {
    if (i) s += ',';
    s += color_char(inputs[i]);
  }
  s += ")->";
  s += color_char(output);
  return s;
}

Signature parse_signature(std::string_view text) {
  Signature sig;
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  auto arrow = t.find("->");
  if (t.empty() || t[0] != '(' || arrow == std::string::npos || arrow == 0 || t[arrow - 1] != ')')
    throw InputError("malformed signature '" + std::string(text) + "'");
  std::string inner = t.substr(1, arrow - 2);
  std::string out = t.substr(arrow + 2);
  if (out.size() != 1) throw InputError("malformed output color in '" + std::string(text) + "'");
  std::stringstream ss(inner);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.size() != 1) throw InputError("malformed input color '" + item + "'");
    sig.inputs.push_back(color_from_char(item[0]));
  }
  sig.output = color_from_char(out[0]);
  return sig;
}

std::string mode_name(Mode m) { return m == Mode::shuffle ? "shuffle" : "planar"; }

int Alphabet::index_of(std::string_view name) const {
  for (size_t i = 0; i < gens.size(); ++i)
    if (gens[i].name == name) return static_cast<int>(i);
  return -1;
}

size_t MonomialHash::operator()(const Monomial& m) const noexcept {
  size_t h = 1469598103934665603ull;
  for (auto x : m.code) {
    h ^= static_cast<size_t>(static_cast<std::uint32_t>(x));
    h *= 1099511628211ull;
  }
  return h;
}

// ---------------------------------------------------------------------------

TreeView::TreeView(const Alphabet& alpha, const Monomial& m) : alpha_(&alpha), m_(&m) {
  const size_t n = m.code.size();
  parent_.assign(n, -1);
  end_.assign(n, 0);
  min_.assign(n, 0);
  slot_.assign(n, -1);
  children_.assign(n, {});
  if (n == 0) throw InputError("empty monomial");
  int e = build(0, -1, -1);
  if (e != static_cast<int>(n)) throw InputError("trailing data in monomial code");
}

int TreeView::build(int pos, int parent, int slot) {
  if (pos >= static_cast<int>(m_->code.size())) throw InputError("truncated monomial code");
  auto up = static_cast<size_t>(pos);
  parent_[up] = parent;
  slot_[up] = slot;
  std::int32_t x = m_->code[up];
  if (Monomial::is_leaf(x)) {
    min_[up] = Monomial::leaf_label(x);
    end_[up] = pos + 1;
    leaves_.push_back(pos);
    return pos + 1;
  }
  if (x >= alpha_->size()) throw InputError("unknown generator index in monomial code");
  internal_.push_back(pos);
  int k = alpha_->gen(x).arity();
  int cur = pos + 1;
  int mn = 1 << 30;
  children_[up].reserve(static_cast<size_t>(k));
  for (int j = 0; j < k; ++j) {
    children_[up].push_back(cur);
    int next = build(cur, pos, j);
    mn = std::min(mn, min_[static_cast<size_t>(cur)]);
    cur = next;
  }
  min_[up] = mn;
  end_[up] = cur;
  return cur;
}

Color TreeView::out_color(int pos) const {
  std::int32_t x = m_->code[static_cast<size_t>(pos)];
  if (Monomial::is_leaf(x)) return Monomial::leaf_color(x);
  return alpha_->gen(x).sig.output;
}

void check_well_formed(const Alphabet& alpha, const Monomial& m) {
  for (auto x : m.code) {
    if (x >= alpha.size()) throw InputError("unknown generator index");
    if (x < 0 && Monomial::leaf_label(x) < 1) throw InputError("leaf label must be positive");
  }
  for (auto x : m.code)
    if (x >= 0 && alpha.gen(x).arity() == 0) throw InputError("generators without inputs are not supported");
  TreeView v(alpha, m);
  (void)v;
}

int arity(const Monomial& m) {
  int n = 0;
  for (auto x : m.code)
    if (Monomial::is_leaf(x)) ++n;
  return n;
}

int vertex_count(const Monomial& m) {
  int n = 0;
  for (auto x : m.code)
    if (!Monomial::is_leaf(x)) ++n;
  return n;
}

int weight(const Alphabet& alpha, const Monomial& m) {
  int w = 0;
  for (auto x : m.code)
    if (!Monomial::is_leaf(x)) w += alpha.gen(x).weight;
  return w;
}

Signature signature(const Alphabet& alpha, const Monomial& m) {
  Signature sig;
  int n = arity(m);
  sig.inputs.assign(static_cast<size_t>(n), Color::straight);
  for (auto x : m.code) {
    if (!Monomial::is_leaf(x)) continue;
    int l = Monomial::leaf_label(x);
    if (l >= 1 && l <= n) sig.inputs[static_cast<size_t>(l - 1)] = Monomial::leaf_color(x);
  }
  std::int32_t r = m.code.front();
  sig.output = Monomial::is_leaf(r) ? Monomial::leaf_color(r) : alpha.gen(r).sig.output;
  return sig;
}

Validation validate(const Alphabet& alpha, const Monomial& m) {
  Validation v;
  auto fail = [&](std::string what, int pos) {
    v.ok = false;
    v.what = std::move(what);
    v.position = pos;
    return v;
  };
  try {
    for (auto x : m.code)
      if (x >= alpha.size()) return fail("unknown generator", -1);
    TreeView t(alpha, m);
    int n = t.leaf_count();
    std::vector<int> seen(static_cast<size_t>(n) + 1, 0);
    for (int p : t.leaves_in_order()) {
      int l = t.label(p);
      if (l < 1 || l > n || seen[static_cast<size_t>(l)]) return fail("leaf labels are not exactly 1..n", p);
      seen[static_cast<size_t>(l)] = 1;
    }
    for (int p : t.internal()) {
      const Generator& g = alpha.gen(t.gen(p));
      const auto& ch = t.children(p);
      for (size_t j = 0; j < ch.size(); ++j) {
        if (t.out_color(ch[j]) != g.sig.inputs[j]) return fail("color mismatch at slot " + std::to_string(j + 1) + " of " + g.name, p);
      }
    }
    if (alpha.mode == Mode::shuffle) {
      for (int p : t.internal()) {
        const auto& ch = t.children(p);
        for (size_t j = 1; j < ch.size(); ++j)
          if (t.min_label(ch[j - 1]) >= t.min_label(ch[j])) return fail("child minima not increasing", p);
      }
    } else {
      int expect = 1;
      for (int p : t.leaves_in_order()) {
        if (t.label(p) != expect) return fail("planar leaves not numbered left to right", p);
        ++expect;
      }
    }
  } catch (const InputError& e) {
    return fail(e.what(), -1);
  }
  return v;
}

// ---------------------------------------------------------------------------
// term syntax

namespace {

struct TermParser {
  const Alphabet& alpha;
  std::string_view s;
  size_t i = 0;

  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  [[noreturn]] void error(const std::string& msg) const {
    throw InputError(msg + " at column " + std::to_string(i + 1) + " in term '" + std::string(s) + "'");
  }

  // Appends the subtree; slot_color is the color demanded by the parent.
  void parse(std::vector<std::int32_t>& code, Color slot_color) {
    skip();
    if (i >= s.size()) error("unexpected end");
    if (std::isdigit(static_cast<unsigned char>(s[i]))) {
      size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      int label = std::stoi(std::string(s.substr(i, j - i)));
      if (label < 1) error("leaf labels start at 1");
      i = j;
      code.push_back(Monomial::leaf_code(label, slot_color));
      return;
    }
    if (!(std::isalpha(static_cast<unsigned char>(s[i])) || s[i] == '_')) error("expected leaf or generator");
    size_t j = i;
    while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_' || s[j] == '\'')) ++j;
    std::string name(s.substr(i, j - i));
    int g = alpha.index_of(name);
    if (g < 0) error("undeclared generator '" + name + "'");
    i = j;
    code.push_back(g);
    const Generator& gen = alpha.gen(g);
    skip();
    if (i >= s.size() || s[i] != '(') error("expected '(' after " + name);
    ++i;
    for (int k = 0; k < gen.arity(); ++k) {
      if (k > 0) {
        skip();
        if (i >= s.size() || s[i] != ',') error("expected ',' in arguments of " + name);
        ++i;
      }
      parse(code, gen.sig.inputs[static_cast<size_t>(k)]);
    }
    skip();
    if (i >= s.size() || s[i] != ')') error("expected ')' closing " + name + " (arity " + std::to_string(gen.arity()) + ")");
    ++i;
  }
};

}  // namespace

Monomial parse_term(const Alphabet& alpha, std::string_view text, Color root_color) {
  TermParser p{alpha, text};
  Monomial m;
  p.parse(m.code, root_color);
  p.skip();
  if (p.i != text.size()) p.error("trailing characters");
  Validation v = validate(alpha, m);
  if (!v) throw InputError("invalid monomial '" + std::string(text) + "': " + v.what);
  return m;
}

namespace {
void format_rec(const Alphabet& alpha, const Monomial& m, size_t& pos, std::string& out) {
  std::int32_t x = m.code[pos++];
  if (Monomial::is_leaf(x)) {
    out += std::to_string(Monomial::leaf_label(x));
    return;
  }
  const Generator& g = alpha.gen(x);
  out += g.name;
  out += '(';
  for (int k = 0; k < g.arity(); ++k) {
    if (k) out += ',';
    format_rec(alpha, m, pos, out);
  }
  out += ')';
}
}  // namespace

std::string format_term(const Alphabet& alpha, const Monomial& m) {
  std::string out;
  size_t pos = 0;
  format_rec(alpha, m, pos, out);
  return out;
}

// ---------------------------------------------------------------------------
// substitution

namespace {

struct Node {
  std::int32_t x;
  std::vector<Node> ch;
  int min = 0;
};

Node to_node(const std::vector<std::int32_t>& code, size_t& pos, const Alphabet& alpha) {
  Node n{code[pos++], {}, 0};
  if (Monomial::is_leaf(n.x)) {
    n.min = Monomial::leaf_label(n.x);
    return n;
  }
  int k = alpha.gen(n.x).arity();
  n.min = 1 << 30;
  for (int j = 0; j < k; ++j) {
    n.ch.push_back(to_node(code, pos, alpha));
    n.min = std::min(n.min, n.ch.back().min);
  }
  return n;
}

void to_code(const Node& n, std::vector<std::int32_t>& code) {
  code.push_back(n.x);
  for (const auto& c : n.ch) to_code(c, code);
}

}  // namespace

Monomial substitute(const Alphabet& alpha, const Monomial& t, int leaf, const Monomial& s, const Relabel& relabel) {
  const int nt = arity(t);
  const int ns = arity(s);
  if (leaf < 1 || leaf > nt) throw InputError("substitute: no leaf " + std::to_string(leaf));
  if (static_cast<int>(relabel.inner.size()) != ns || static_cast<int>(relabel.outer.size()) != nt)
    throw InputError("substitute: relabel sizes do not match the label sets");
  const int total = nt - 1 + ns;
  std::vector<int> used(static_cast<size_t>(total) + 1, 0);
  auto take = [&](int v) {
    if (v < 1 || v > total || used[static_cast<size_t>(v)]) throw InputError("substitute: relabel is not a bijection onto 1..n");
    used[static_cast<size_t>(v)] = 1;
  };
  for (int v : relabel.inner) take(v);
  for (int j = 1; j <= nt; ++j)
    if (j != leaf) take(relabel.outer[static_cast<size_t>(j - 1)]);
  for (size_t a = 1; a < relabel.inner.size(); ++a)
    if (relabel.inner[a - 1] >= relabel.inner[a]) throw InputError("substitute: relabel is not an order-preserving shuffle");
  int prev = 0;
  for (int j = 1; j <= nt; ++j) {
    if (j == leaf) continue;
    int v = relabel.outer[static_cast<size_t>(j - 1)];
    if (v <= prev) throw InputError("substitute: relabel is not an order-preserving shuffle");
    prev = v;
  }

  // find the leaf and its color
  Color leaf_color = Color::straight;
  bool found = false;
  for (auto x : t.code)
    if (Monomial::is_leaf(x) && Monomial::leaf_label(x) == leaf) {
      leaf_color = Monomial::leaf_color(x);
      found = true;
    }
  if (!found) throw InputError("substitute: no leaf " + std::to_string(leaf));
  if (signature(alpha, s).output != leaf_color) throw InputError("substitute: color mismatch at grafted leaf");

  std::vector<std::int32_t> code;
  for (auto x : t.code) {
    if (!Monomial::is_leaf(x)) {
      code.push_back(x);
      continue;
    }
    int l = Monomial::leaf_label(x);
    if (l != leaf) {
      code.push_back(Monomial::leaf_code(relabel.outer[static_cast<size_t>(l - 1)], Monomial::leaf_color(x)));
      continue;
    }
    for (auto y : s.code) {
      if (Monomial::is_leaf(y))
        code.push_back(Monomial::leaf_code(relabel.inner[static_cast<size_t>(Monomial::leaf_label(y) - 1)], Monomial::leaf_color(y)));
      else
        code.push_back(y);
    }
  }

  Monomial out{code};
  if (alpha.mode == Mode::shuffle) {
    // restore increasing child minima along the path through the graft
    size_t pos = 0;
    Node root = to_node(out.code, pos, alpha);
    std::function<int(Node&)> fix = [&](Node& n) -> int {
      if (n.ch.empty()) return n.min;
      for (auto& c : n.ch) fix(c);
      std::vector<size_t> idx(n.ch.size());
      std::iota(idx.begin(), idx.end(), 0);
      std::stable_sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return n.ch[a].min < n.ch[b].min; });
      bool moved = false;
      for (size_t a = 0; a < idx.size(); ++a) moved = moved || idx[a] != a;
      if (moved) {
        const Generator& g = alpha.gen(n.x);
        std::vector<Node> sorted;
        for (size_t a = 0; a < idx.size(); ++a) sorted.push_back(std::move(n.ch[idx[a]]));
        for (size_t a = 0; a < sorted.size(); ++a) {
          Color c = sorted[a].ch.empty() ? Monomial::leaf_color(sorted[a].x) : alpha.gen(sorted[a].x).sig.output;
          if (c != g.sig.inputs[a]) throw InputError("substitute: relabel is not an order-preserving shuffle (re-sorting breaks colors)");
        }
        n.ch = std::move(sorted);
      }
      n.min = 1 << 30;
      for (auto& c : n.ch) n.min = std::min(n.min, c.min);
      return n.min;
    };
    fix(root);
    out.code.clear();
    to_code(root, out.code);
  }
  Validation v = validate(alpha, out);
  if (!v) throw InputError("substitute: result invalid: " + v.what);
  return out;
}

// ---------------------------------------------------------------------------
// divisors

std::vector<int> Embedding::sorted_image() const {
  std::vector<int> s = image;
  std::sort(s.begin(), s.end());
  return s;
}

namespace {

bool match_rec(const TreeView& host, const TreeView& pat, int hp, int pp, Embedding& e) {
  if (pat.is_leaf(pp)) {
    e.hang[static_cast<size_t>(pat.label(pp) - 1)] = hp;
    return true;
  }
  if (host.is_leaf(hp) || host.gen(hp) != pat.gen(pp)) return false;
  e.image.push_back(hp);
  const auto& hc = host.children(hp);
  const auto& pc = pat.children(pp);
  for (size_t j = 0; j < pc.size(); ++j)
    if (!match_rec(host, pat, hc[j], pc[j], e)) return false;
  return true;
}

}  // namespace

std::optional<Embedding> match_at(const TreeView& host, const TreeView& pattern, int at) {
  if (pattern.is_leaf(0)) return std::nullopt;
  if (host.is_leaf(at) || host.gen(at) != pattern.gen(0)) return std::nullopt;
  Embedding e;
  e.hang.assign(static_cast<size_t>(pattern.leaf_count()), -1);
  if (!match_rec(host, pattern, at, 0, e)) return std::nullopt;
  for (size_t i = 1; i < e.hang.size(); ++i)
    if (host.min_label(e.hang[i - 1]) >= host.min_label(e.hang[i])) return std::nullopt;
  return e;
}

std::vector<Embedding> find_divisors(const TreeView& host, const TreeView& pattern) {
  std::vector<Embedding> out;
  for (int p : host.internal()) {
    auto e = match_at(host, pattern, p);
    if (e) out.push_back(std::move(*e));
  }
  return out;
}

std::vector<Embedding> find_divisors(const Alphabet& alpha, const Monomial& host, const Monomial& pattern) {
  TreeView h(alpha, host), p(alpha, pattern);
  return find_divisors(h, p);
}

Monomial graft_replacement(const TreeView& host, const Embedding& e, const Monomial& t) {
  const auto& hc = host.monomial().code;
  Monomial out;
  int root = e.root();
  int stop = host.end(root);
  out.code.reserve(hc.size() + t.code.size());
  out.code.insert(out.code.end(), hc.begin(), hc.begin() + root);
  for (auto x : t.code) {
    if (!Monomial::is_leaf(x)) {
      out.code.push_back(x);
      continue;
    }
    int h = e.hang[static_cast<size_t>(Monomial::leaf_label(x) - 1)];
    out.code.insert(out.code.end(), hc.begin() + h, hc.begin() + host.end(h));
  }
  out.code.insert(out.code.end(), hc.begin() + stop, hc.end());
  return out;
}

Monomial extract_divisor(const Alphabet& alpha, const TreeView& host, const Embedding& e) {
  (void)alpha;
  std::vector<int> in_image(static_cast<size_t>(host.size()), 0);
  for (int p : e.image) in_image[static_cast<size_t>(p)] = 1;
  std::vector<int> label_of(static_cast<size_t>(host.size()), 0);
  for (size_t i = 0; i < e.hang.size(); ++i) label_of[static_cast<size_t>(e.hang[i])] = static_cast<int>(i) + 1;
  Monomial out;
  std::function<void(int)> rec = [&](int p) {
    if (label_of[static_cast<size_t>(p)]) {
      out.code.push_back(Monomial::leaf_code(label_of[static_cast<size_t>(p)], host.out_color(p)));
      return;
    }
    out.code.push_back(host.gen(p));
    for (int c : host.children(p)) rec(c);
  };
  rec(e.root());
  return out;
}

std::string to_dot(const Alphabet& alpha, const Monomial& m, std::string_view graph_name) {
  TreeView t(alpha, m);
  std::ostringstream os;
  os << "digraph " << graph_name << " {\n  rankdir=BT;\n";
  os << "  root [shape=point];\n";
  for (int p = 0; p < t.size(); ++p) {
    if (t.is_leaf(p))
      os << "  n" << p << " [shape=plaintext,label=\"" << t.label(p) << "\"];\n";
    else
      os << "  n" << p << " [shape=circle,label=\"" << alpha.gen(t.gen(p)).name << "\"];\n";
  }
  auto style = [&](int p) { return t.out_color(p) == Color::dotted ? " [style=dashed]" : ""; };
  os << "  n0 -> root" << style(0) << ";\n";
  for (int p = 1; p < t.size(); ++p) os << "  n" << p << " -> n" << t.parent(p) << style(p) << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace diop
