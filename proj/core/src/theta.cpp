#include "diop/theta.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "diop/enumerate.hpp"
#include "diop/linalg.hpp"

namespace diop {

bool ColoringRule::allows(int m, int n) const {
  if (m < 0 || n < 0) return false;
  switch (kind) {
    case ColoringKind::pos_pos: return m >= 1 && n >= 1;
    case ColoringKind::nonneg_pos: return n >= 1;
    case ColoringKind::nonneg_nonneg: return true;
    case ColoringKind::outputs_one: return m >= 1 && n == 1;
    case ColoringKind::equal: return m == n;
    case ColoringKind::custom: return table.count({m, n}) > 0;
  }
  return false;
}

std::string ColoringRule::name() const {
  switch (kind) {
    case ColoringKind::pos_pos: return "pos_pos";
    case ColoringKind::nonneg_pos: return "nonneg_pos";
    case ColoringKind::nonneg_nonneg: return "nonneg_nonneg";
    case ColoringKind::outputs_one: return "outputs_one";
    case ColoringKind::equal: return "equal";
    case ColoringKind::custom: {
      std::ostringstream os;
      os << "custom:";
      bool first = true;
      for (auto [m, n] : table) {
        if (!first) os << ";";
        first = false;
        os << m << "," << n;
      }
      return os.str();
    }
  }
  return "?";
}

ColoringRule ColoringRule::parse(std::string_view s) {
  ColoringRule r;
  if (s == "pos_pos") r.kind = ColoringKind::pos_pos;
  else if (s == "nonneg_pos") r.kind = ColoringKind::nonneg_pos;
  else if (s == "nonneg_nonneg") r.kind = ColoringKind::nonneg_nonneg;
  else if (s == "outputs_one") r.kind = ColoringKind::outputs_one;
  else if (s == "equal") r.kind = ColoringKind::equal;
  else if (s.starts_with("custom:")) {
    r.kind = ColoringKind::custom;
    std::string body(s.substr(7));
    std::istringstream is(body);
    std::string item;
    r.bound = 0;
    while (std::getline(is, item, ';')) {
      auto comma = item.find(',');
      if (comma == std::string::npos) throw InputError("bad custom coloring entry '" + item + "'");
      try {
        int m = std::stoi(item.substr(0, comma));
        int n = std::stoi(item.substr(comma + 1));
        r.table.insert({m, n});
        r.bound = std::max(r.bound, m + n);
      } catch (const std::logic_error&) {
        throw InputError("bad custom coloring entry '" + item + "'");
      }
    }
  } else {
    throw InputError("unknown coloring rule '" + std::string(s) + "'");
  }
  return r;
}

bool coloring_closed(const ColoringRule& c, int bound) {
  for (int t = 1; t <= bound; ++t)
    for (int m = 1; m <= t; ++m) {
      int n = t - m;
      if (!c.allows(m, n)) continue;
      for (int t2 = 1; t2 <= bound; ++t2)
        for (int n2 = 1; n2 <= t2; ++n2) {
          int m2 = t2 - n2;
          if (!c.allows(m2, n2)) continue;
          int rm = m + m2 - 1, rn = n + n2 - 1;
          if (rm + rn > bound) continue;
          if (!c.allows(rm, rn)) return false;
        }
    }
  return true;
}

std::pair<int, int> corolla_arity(const Signature& sig) {
  int s = 0, d = 0;
  for (Color c : sig.inputs) (c == Color::straight ? s : d)++;
  if (sig.output == Color::straight) return {s, 1 + d};
  return {1 + s, d};
}

ThetaColoring::ThetaColoring(const Alphabet& base, ColoringRule rule) : base_(base), rule_(std::move(rule)) {
  colored_.mode = base_.mode;
  for (int g = 0; g < base_.size(); ++g) {
    const Generator& bg = base_.gen(g);
    int k = bg.arity();
    for (Color out : {Color::straight, Color::dotted})
      for (unsigned mask = 0; mask < (1u << k); ++mask) {
        Signature sig;
        sig.output = out;
        for (int i = 0; i < k; ++i) sig.inputs.push_back((mask >> (k - 1 - i)) & 1u ? Color::dotted : Color::straight);
        auto [m, n] = corolla_arity(sig);
        if (!rule_.allows(m, n)) continue;
        std::string name = bg.name + "_";
        for (Color c : sig.inputs) name += color_char(c);
        name += "_";
        name += color_char(out);
        index_[{g, sig}] = colored_.size();
        base_of_.push_back(g);
        colored_.gens.push_back(Generator{name, sig, bg.weight, bg.hdegree});
      }
  }
}

int ThetaColoring::colored_index(int base_gen, const Signature& sig) const {
  auto it = index_.find({base_gen, sig});
  return it == index_.end() ? -1 : it->second;
}

Monomial ThetaColoring::strip(const Monomial& colored) const {
  Monomial out = colored;
  for (auto& x : out.code) {
    if (Monomial::is_leaf(x)) x = Monomial::leaf_code(Monomial::leaf_label(x), Color::straight);
    else x = base_of(x);
  }
  return out;
}

std::optional<Monomial> ThetaColoring::color(const Monomial& base, const Signature& sig,
                                             const std::vector<Color>& internal) const {
  TreeView v(base_, base);
  std::vector<Color> col(static_cast<size_t>(v.size()), Color::straight);
  size_t k = 0;
  for (int pos = 0; pos < v.size(); ++pos) {
    if (v.is_leaf(pos)) {
      int l = v.label(pos);
      if (l < 1 || l > sig.arity()) throw InputError("leaf label outside signature");
      col[static_cast<size_t>(pos)] = sig.inputs[static_cast<size_t>(l - 1)];
    } else if (pos == 0) {
      col[0] = sig.output;
    } else {
      if (k >= internal.size()) throw InputError("too few internal colors");
      col[static_cast<size_t>(pos)] = internal[k++];
    }
  }
  Monomial out = base;
  for (int pos = 0; pos < v.size(); ++pos) {
    auto& x = out.code[static_cast<size_t>(pos)];
    if (v.is_leaf(pos)) {
      x = Monomial::leaf_code(v.label(pos), col[static_cast<size_t>(pos)]);
      continue;
    }
    Signature s;
    s.output = col[static_cast<size_t>(pos)];
    for (int ch : v.children(pos)) s.inputs.push_back(col[static_cast<size_t>(ch)]);
    int g = colored_index(v.gen(pos), s);
    if (g < 0) return std::nullopt;
    x = g;
  }
  return out;
}

namespace {

int internal_edges(const Monomial& base) {
  int e = 0;
  for (size_t i = 1; i < base.code.size(); ++i)
    if (!Monomial::is_leaf(base.code[i])) ++e;
  return e;
}

std::vector<Color> mask_colors(unsigned mask, int e) {
  std::vector<Color> c;
  for (int i = 0; i < e; ++i) c.push_back((mask >> i) & 1u ? Color::dotted : Color::straight);
  return c;
}

}  // namespace

std::vector<Monomial> ThetaColoring::colorings(const Monomial& base, const Signature& sig) const {
  int e = internal_edges(base);
  if (e > 20) throw GuardExceeded("too many internal edges to color");
  std::vector<Monomial> out;
  for (unsigned mask = 0; mask < (1u << e); ++mask)
    if (auto m = color(base, sig, mask_colors(mask, e))) out.push_back(std::move(*m));
  return out;
}

Monomial ThetaColoring::max_coloring(const Monomial& base, const Signature& sig) const {
  if (!is_caterpillar(base_, base)) throw InputError("shape is not a caterpillar: " + format_term(base_, base));
  int e = internal_edges(base);
  if (e > 20) throw GuardExceeded("too many internal edges to color");
  std::vector<unsigned> ok;
  for (unsigned mask = 0; mask < (1u << e); ++mask)
    if (color(base, sig, mask_colors(mask, e))) ok.push_back(mask);
  if (ok.empty())
    throw InputError("no admissible coloring of " + format_term(base_, base) + " at " + sig.str());
  unsigned best = *std::min_element(ok.begin(), ok.end(), [](unsigned a, unsigned b) {
    return std::popcount(a) < std::popcount(b);
  });
  for (unsigned m : ok)
    if ((best & m) != best)
      throw InputError("no maximal coloring of " + format_term(base_, base) + " at " + sig.str());
  return *color(base, sig, mask_colors(best, e));
}

bool is_caterpillar(const Alphabet& alpha, const Monomial& t) {
  TreeView v(alpha, t);
  for (int pos : v.internal()) {
    int inner = 0;
    for (int ch : v.children(pos))
      if (!v.is_leaf(ch)) ++inner;
    if (inner > 1) return false;
  }
  return true;
}

namespace {

Signature straight_sig(int arity) {
  Signature s;
  s.inputs.assign(static_cast<size_t>(arity), Color::straight);
  return s;
}

// Two-vertex shapes of the base alphabet, grouped by arity.
std::vector<Monomial> two_vertex_shapes(const Alphabet& base) {
  std::set<int> arities;
  for (const auto& a : base.gens)
    for (const auto& b : base.gens) arities.insert(a.arity() + b.arity() - 1);
  std::vector<Monomial> out;
  for (int n : arities) {
    std::set<int> weights;
    for (const auto& a : base.gens)
      for (const auto& b : base.gens)
        if (a.arity() + b.arity() - 1 == n) weights.insert(a.weight + b.weight);
    for (int w : weights)
      for (auto& m : enumerate_monomials(base, straight_sig(n), w))
        if (vertex_count(m) == 2) out.push_back(std::move(m));
  }
  return out;
}

// Recoloring pairs (dotted edge, straight edge) of two-vertex shapes.
std::vector<std::pair<Monomial, Monomial>> recolorings(const ThetaColoring& tc) {
  std::vector<std::pair<Monomial, Monomial>> out;
  for (const auto& shape : two_vertex_shapes(tc.base()))
    for (const auto& sig : all_signatures(arity(shape))) {
      auto dotted = tc.color(shape, sig, {Color::dotted});
      auto straight = tc.color(shape, sig, {Color::straight});
      if (dotted && straight) out.emplace_back(std::move(*dotted), std::move(*straight));
    }
  return out;
}

}  // namespace

Presentation theta_presentation(const Presentation& cyclic, const ColoringRule& c, OrderKind kind,
                                const std::vector<std::string>& order_names) {
  ThetaColoring tc(cyclic.alpha, c);
  Presentation p;
  p.name = cyclic.name + "_theta";
  p.alpha = tc.colored();
  p.order_names = order_names;
  p.order = MonomialOrder::make(p.alpha, kind, order_names);

  // Relations of a block are the kernel of the color-forgetting map from
  // colored monomials to base monomials modulo the base relations.
  std::map<std::pair<int, int>, std::vector<Polynomial>> base_rels;  // (arity, weight)
  for (const auto& r : cyclic.rules) {
    if (vertex_count(r.lhs) != 2) throw InputError("coloring needs quadratic relations; " + r.name + " is not");
    base_rels[{arity(r.lhs), weight(cyclic.alpha, r.lhs)}].push_back(Polynomial(r.lhs) - r.rhs);
  }
  std::map<std::pair<int, int>, bool> blocks;  // (arity, weight) of two-vertex shapes
  for (const auto& m : two_vertex_shapes(cyclic.alpha)) blocks[{arity(m), weight(cyclic.alpha, m)}] = true;

  int recolor = 0, rel = 0;
  for (const auto& [aw, unused] : blocks) {
    auto [n, w] = aw;
    std::vector<Monomial> base = enumerate_monomials(cyclic.alpha, straight_sig(n), w);
    std::sort(base.begin(), base.end());
    auto base_col = [&](const Monomial& m) {
      return static_cast<int>(std::lower_bound(base.begin(), base.end(), m) - base.begin());
    };
    for (const auto& sig : all_signatures(n)) {
      std::vector<Monomial> cols = enumerate_monomials(p.alpha, sig, w);
      if (cols.empty()) continue;
      std::stable_sort(cols.begin(), cols.end(), [&](const Monomial& a, const Monomial& b) {
        return compare_unchecked(p.alpha, *p.order, a, b) < 0;
      });
      const int nv = static_cast<int>(cols.size());
      Eliminator e;
      for (const auto& r : base_rels[aw]) {
        std::vector<std::pair<int, Rational>> row;
        for (const auto& t : r.terms()) row.emplace_back(nv + base_col(t.mono), t.coef);
        e.add(make_row(std::move(row)));
      }
      for (int i = 0; i < nv; ++i)
        e.add(make_row({{i, Rational(1)}, {nv + base_col(tc.strip(cols[static_cast<size_t>(i)])), Rational(1)}}));
      auto basis = e.reduced_basis();
      std::reverse(basis.begin(), basis.end());
      for (const auto& row : basis) {
        int piv = row.back().first;
        if (piv >= nv) continue;
        RewriteRule rule;
        rule.lhs = cols[static_cast<size_t>(piv)];
        std::vector<Term> rhs;
        bool same_shape = true;
        for (const auto& [col, coef] : row)
          if (col != piv) {
            rhs.push_back({-coef / row.back().second, cols[static_cast<size_t>(col)]});
            same_shape &= tc.strip(cols[static_cast<size_t>(col)]) == tc.strip(rule.lhs);
          }
        rule.name = same_shape ? "recolor_" + std::to_string(++recolor) : "rel_" + std::to_string(++rel);
        rule.rhs = canonicalize_polynomial(p.alpha, std::move(rhs));
        p.rules.push_back(std::move(rule));
      }
    }
  }
  check_certificate(p);
  return p;
}

Presentation theta_rules(const Presentation& system, const ColoringRule& c) {
  const MonomialOrder& base_order = system.require_order();
  ThetaColoring tc(system.alpha, c);
  Presentation p;
  p.name = system.name + "_theta";
  p.alpha = tc.colored();
  p.order_names = system.order_names;
  p.measures = {"shape_rank", "dotted_internal_edges"};
  p.order = MonomialOrder::make_by_base(p.alpha, base_order.kind, system.order_names);

  int k = 0;
  for (auto& [d, s] : recolorings(tc)) p.rules.push_back({"recolor_" + std::to_string(++k), d, Polynomial(s)});
  for (const auto& r : system.rules) {
    int j = 0;
    for (const auto& sig : all_signatures(arity(r.lhs)))
      for (const auto& lhs : tc.colorings(r.lhs, sig)) {
        std::vector<Term> rhs;
        for (const auto& t : r.rhs.terms()) {
          // a shape with no admissible coloring is zero in the colored operad
          if (tc.colorings(t.mono, sig).empty()) continue;
          rhs.push_back({t.coef, tc.max_coloring(t.mono, sig)});
        }
        p.rules.push_back({r.name + "_" + std::to_string(++j), lhs, canonicalize_polynomial(p.alpha, std::move(rhs))});
      }
  }
  check_certificate(p);
  return p;
}

}  // namespace diop
