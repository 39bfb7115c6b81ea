#include "support.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace diop::testing {

namespace {

struct Node {
  int gen = -1;  // -1: leaf
  Color color = Color::straight;
  int label = 0;
  std::vector<Node> kids;
};

int count_leaves(const Node& n) {
  if (n.gen < 0) return 1;
  int s = 0;
  for (const auto& k : n.kids) s += count_leaves(k);
  return s;
}

void collect_leaves(Node& n, std::vector<Node*>& out) {
  if (n.gen < 0) {
    out.push_back(&n);
    return;
  }
  for (auto& k : n.kids) collect_leaves(k, out);
}

// Shuffle labelling: the first child takes the smallest label, each later
// child the smallest label left, the rest of each part is random.
void label_shuffle(Node& n, std::vector<int> labels, Rng& rng) {
  if (n.gen < 0) {
    n.label = labels.front();
    return;
  }
  std::sort(labels.begin(), labels.end());
  for (auto& k : n.kids) {
    int c = count_leaves(k);
    std::vector<int> part = {labels.front()};
    std::vector<int> rest(labels.begin() + 1, labels.end());
    std::shuffle(rest.begin(), rest.end(), rng);
    part.insert(part.end(), rest.begin(), rest.begin() + (c - 1));
    std::vector<int> left(rest.begin() + (c - 1), rest.end());
    std::sort(left.begin(), left.end());
    label_shuffle(k, part, rng);
    labels = left;
  }
}

void emit(const Node& n, std::vector<std::int32_t>& code) {
  if (n.gen < 0) {
    code.push_back(Monomial::leaf_code(n.label, n.color));
    return;
  }
  code.push_back(n.gen);
  for (const auto& k : n.kids) emit(k, code);
}

Node corolla(const Alphabet& alpha, int g) {
  Node n;
  n.gen = g;
  n.color = alpha.gen(g).sig.output;
  for (Color c : alpha.gen(g).sig.inputs) {
    Node leaf;
    leaf.color = c;
    n.kids.push_back(leaf);
  }
  return n;
}

// Every order-preserving relabelling of a graft of an ns-leaf tree into
// leaf `leaf` of an nt-leaf tree that yields a valid composite.
std::vector<Relabel> graft_relabels(Mode mode, int nt, int leaf, int ns) {
  std::vector<Relabel> out;
  const int n = nt - 1 + ns;
  if (mode == Mode::planar) {
    Relabel r;
    for (int i = 0; i < ns; ++i) r.inner.push_back(leaf + i);
    for (int j = 1; j <= nt; ++j) r.outer.push_back(j < leaf ? j : (j == leaf ? 0 : j + ns - 1));
    out.push_back(r);
    return out;
  }
  // inner = {leaf} + a choice of ns-1 labels above leaf
  std::vector<int> above;
  for (int v = leaf + 1; v <= n; ++v) above.push_back(v);
  std::vector<bool> pick(above.size(), false);
  std::fill(pick.begin(), pick.begin() + (ns - 1), true);
  do {
    Relabel r;
    r.inner.push_back(leaf);
    std::vector<int> outer_high;
    for (size_t i = 0; i < above.size(); ++i) (pick[i] ? r.inner : outer_high).push_back(above[i]);
    size_t h = 0;
    for (int j = 1; j <= nt; ++j) r.outer.push_back(j < leaf ? j : (j == leaf ? 0 : outer_high[h++]));
    out.push_back(r);
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return out;
}

Color leaf_color_of(const Monomial& m, int label) {
  for (auto x : m.code)
    if (Monomial::is_leaf(x) && Monomial::leaf_label(x) == label) return Monomial::leaf_color(x);
  return Color::straight;
}

using Vec = std::map<Monomial, Rational>;

void add_into(Vec& v, const Monomial& m, const Rational& c) {
  auto& x = v[m];
  x += c;
  if (x == 0) v.erase(m);
}

}  // namespace

std::optional<Monomial> random_monomial(const Alphabet& alpha, Rng& rng, int weight, Color root) {
  auto pick_gen = [&](Color out) -> int {
    std::vector<int> ok;
    for (int g = 0; g < alpha.size(); ++g)
      if (alpha.gen(g).sig.output == out && alpha.gen(g).arity() > 0) ok.push_back(g);
    if (ok.empty()) return -1;
    return ok[std::uniform_int_distribution<size_t>(0, ok.size() - 1)(rng)];
  };
  for (int attempt = 0; attempt < 50; ++attempt) {
    int g = pick_gen(root);
    if (g < 0) return std::nullopt;
    Node top = corolla(alpha, g);
    bool stuck = false;
    for (int w = 1; w < weight && !stuck; ++w) {
      std::vector<Node*> leaves;
      collect_leaves(top, leaves);
      Node* leaf = leaves[std::uniform_int_distribution<size_t>(0, leaves.size() - 1)(rng)];
      int h = pick_gen(leaf->color);
      if (h < 0) {
        stuck = true;
        break;
      }
      *leaf = corolla(alpha, h);
    }
    if (stuck) continue;
    int n = count_leaves(top);
    std::vector<int> labels(static_cast<size_t>(n));
    std::iota(labels.begin(), labels.end(), 1);
    if (alpha.mode == Mode::shuffle) {
      label_shuffle(top, labels, rng);
    } else {
      std::vector<Node*> leaves;
      collect_leaves(top, leaves);
      for (size_t i = 0; i < leaves.size(); ++i) leaves[i]->label = static_cast<int>(i) + 1;
    }
    Monomial m;
    emit(top, m.code);
    return m;
  }
  return std::nullopt;
}

Monomial random_graft(const Alphabet& alpha, Rng& rng, const Monomial& t, int leaf, const Monomial& s) {
  auto rs = graft_relabels(alpha.mode, arity(t), leaf, arity(s));
  const auto& r = rs[std::uniform_int_distribution<size_t>(0, rs.size() - 1)(rng)];
  return substitute(alpha, t, leaf, s, r);
}

int brute_force_divisor_count(const Alphabet& alpha, const Monomial& host, const Monomial& pattern) {
  TreeView h(alpha, host);
  const int k = vertex_count(pattern);
  const auto& internal = h.internal();
  const int nv = static_cast<int>(internal.size());
  int count = 0;
  std::vector<int> chosen;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(chosen.size()) == k) {
      std::set<int> in(chosen.begin(), chosen.end());
      int top = -1;
      for (int p : chosen)
        if (!in.count(h.parent(p))) {
          if (top >= 0) return;  // two tops: not connected
          top = p;
        }
      // cut out the region; hanging subtrees become placeholder leaves
      std::vector<std::pair<int, int>> code;  // (gen or -1, hanging position)
      std::function<void(int)> cut = [&](int p) {
        code.push_back({h.gen(p), -1});
        for (int c : h.children(p)) {
          if (!h.is_leaf(c) && in.count(c))
            cut(c);
          else
            code.push_back({-1, c});
        }
      };
      cut(top);
      std::vector<int> mins;
      for (auto& [g, c] : code)
        if (g < 0) mins.push_back(h.min_label(c));
      std::vector<int> sorted = mins;
      std::sort(sorted.begin(), sorted.end());
      Monomial m;
      size_t li = 0;
      for (auto& [g, c] : code) {
        if (g >= 0) {
          m.code.push_back(g);
          continue;
        }
        int rank = alpha.mode == Mode::planar
                       ? static_cast<int>(li) + 1
                       : static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), mins[li]) - sorted.begin()) + 1;
        m.code.push_back(Monomial::leaf_code(rank, h.out_color(c)));
        ++li;
      }
      if (m == pattern) ++count;
      return;
    }
    for (int i = start; i < nv; ++i) {
      chosen.push_back(internal[static_cast<size_t>(i)]);
      rec(i + 1);
      chosen.pop_back();
    }
  };
  rec(0);
  return count;
}

std::vector<Monomial> brute_force_monomials(const Alphabet& alpha, const Signature& sig, int weight) {
  const int n = sig.arity();
  std::set<Monomial> layer;
  for (int g = 0; g < alpha.size(); ++g) {
    if (alpha.gen(g).sig.output != sig.output || alpha.gen(g).arity() > n) continue;
    Monomial m{{g}};
    for (int i = 0; i < alpha.gen(g).arity(); ++i)
      m.code.push_back(Monomial::leaf_code(i + 1, alpha.gen(g).sig.inputs[static_cast<size_t>(i)]));
    layer.insert(m);
  }
  for (int w = 1; w < weight; ++w) {
    std::set<Monomial> next;
    for (const auto& t : layer) {
      int nt = arity(t);
      for (int leaf = 1; leaf <= nt; ++leaf) {
        Color lc = leaf_color_of(t, leaf);
        for (int g = 0; g < alpha.size(); ++g) {
          const auto& G = alpha.gen(g);
          if (G.sig.output != lc || G.arity() == 0 || nt - 1 + G.arity() > n) continue;
          Monomial s{{g}};
          for (int i = 0; i < G.arity(); ++i) s.code.push_back(Monomial::leaf_code(i + 1, G.sig.inputs[static_cast<size_t>(i)]));
          for (const auto& r : graft_relabels(alpha.mode, nt, leaf, G.arity())) next.insert(substitute(alpha, t, leaf, s, r));
        }
      }
    }
    layer = std::move(next);
  }
  std::vector<Monomial> out;
  for (const auto& m : layer)
    if (signature(alpha, m) == sig) out.push_back(m);
  return out;
}

int dense_rank(std::vector<std::vector<Rational>> rows) {
  int rank = 0;
  if (rows.empty()) return 0;
  const size_t cols = rows[0].size();
  for (size_t c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
    size_t piv = static_cast<size_t>(rank);
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[static_cast<size_t>(rank)]);
    auto& p = rows[static_cast<size_t>(rank)];
    for (size_t r = static_cast<size_t>(rank) + 1; r < rows.size(); ++r) {
      if (rows[r][c] == 0) continue;
      Rational f = rows[r][c] / p[c];
      for (size_t k = c; k < cols; ++k) rows[r][k] -= f * p[k];
    }
    ++rank;
  }
  return rank;
}

long brute_force_dim(const Presentation& p, const Signature& sig, int weight) {
  const Alphabet& alpha = p.alpha;
  const int n = sig.arity();
  auto corolla_mono = [&](int g) {
    Monomial s{{g}};
    for (int i = 0; i < alpha.gen(g).arity(); ++i)
      s.code.push_back(Monomial::leaf_code(i + 1, alpha.gen(g).sig.inputs[static_cast<size_t>(i)]));
    return s;
  };
  auto graft_vec = [&](const Vec& t, int leaf, const Monomial& s, const Relabel& r) {
    Vec out;
    for (const auto& [m, c] : t) add_into(out, substitute(alpha, m, leaf, s, r), c);
    return out;
  };
  auto graft_into_vec = [&](const Monomial& t, int leaf, const Vec& s, const Relabel& r) {
    Vec out;
    for (const auto& [m, c] : s) add_into(out, substitute(alpha, t, leaf, m, r), c);
    return out;
  };

  std::vector<Vec> layer;
  std::vector<std::vector<Vec>> by_weight(static_cast<size_t>(weight) + 1);
  for (const auto& r : p.rules) {
    int w = diop::weight(alpha, r.lhs);
    if (w > weight || arity(r.lhs) > n) continue;
    Vec v;
    add_into(v, r.lhs, 1);
    for (const auto& t : r.rhs.terms()) add_into(v, t.mono, -t.coef);
    by_weight[static_cast<size_t>(w)].push_back(v);
  }
  for (int w = 1; w < weight; ++w) {
    for (const auto& v : by_weight[static_cast<size_t>(w)]) {
      if (v.empty()) continue;
      const Monomial& any = v.begin()->first;
      Signature vs = signature(alpha, any);
      int nv = arity(any);
      for (int g = 0; g < alpha.size(); ++g) {
        const auto& G = alpha.gen(g);
        if (G.arity() == 0 || nv - 1 + G.arity() > n) continue;
        Monomial s = corolla_mono(g);
        // generator above the relation
        for (int slot = 0; slot < G.arity(); ++slot) {
          if (G.sig.inputs[static_cast<size_t>(slot)] != vs.output) continue;
          // relabel s so that its slot leaf is replaced by v; s leaves are 1..k in slot order
          for (const auto& r : graft_relabels(alpha.mode, G.arity(), slot + 1, nv))
            by_weight[static_cast<size_t>(w) + 1].push_back(graft_into_vec(s, slot + 1, v, r));
        }
        // generator below one of the relation's leaves
        for (int leaf = 1; leaf <= nv; ++leaf) {
          if (leaf_color_of(any, leaf) != G.sig.output) continue;
          for (const auto& r : graft_relabels(alpha.mode, nv, leaf, G.arity()))
            by_weight[static_cast<size_t>(w) + 1].push_back(graft_vec(v, leaf, s, r));
        }
      }
    }
  }
  auto monos = brute_force_monomials(alpha, sig, weight);
  std::map<Monomial, size_t> col;
  for (size_t i = 0; i < monos.size(); ++i) col[monos[i]] = i;
  std::vector<std::vector<Rational>> rows;
  for (const auto& v : by_weight[static_cast<size_t>(weight)]) {
    if (v.empty() || signature(alpha, v.begin()->first) != sig) continue;
    std::vector<Rational> row(monos.size(), Rational(0));
    for (const auto& [m, c] : v) row[col.at(m)] = c;
    rows.push_back(std::move(row));
  }
  return static_cast<long>(monos.size()) - dense_rank(std::move(rows));
}

DioperadTree random_dtree(const DioperadPresentation& d, Rng& rng, int vertices) {
  DioperadTree t;
  // free[v] = legs of vertex v not yet used by an edge
  std::vector<std::vector<int>> free;
  auto add_vertex = [&]() {
    int g = std::uniform_int_distribution<int>(0, static_cast<int>(d.gens.size()) - 1)(rng);
    t.vertices.push_back({"v" + std::to_string(t.vertices.size()), g});
    std::vector<int> legs(static_cast<size_t>(d.gens[static_cast<size_t>(g)].legs()));
    std::iota(legs.begin(), legs.end(), 0);
    free.push_back(legs);
  };
  add_vertex();
  for (int v = 1; v < vertices; ++v) {
    add_vertex();
    const auto& gv = d.gens[static_cast<size_t>(t.vertices.back().gen)];
    for (int attempt = 0; attempt < 100; ++attempt) {
      int u = std::uniform_int_distribution<int>(0, v - 1)(rng);
      const auto& gu = d.gens[static_cast<size_t>(t.vertices[static_cast<size_t>(u)].gen)];
      auto& fu = free[static_cast<size_t>(u)];
      auto& fv = free[static_cast<size_t>(v)];
      if (fu.empty() || fv.empty()) continue;
      int lu = fu[std::uniform_int_distribution<size_t>(0, fu.size() - 1)(rng)];
      int lv = fv[std::uniform_int_distribution<size_t>(0, fv.size() - 1)(rng)];
      bool u_in = gu.is_input(lu), v_in = gv.is_input(lv);
      if (u_in == v_in) continue;
      if (u_in)
        t.edges.push_back({v, lv - gv.m, u, lu});
      else
        t.edges.push_back({u, lu - gu.m, v, lv});
      fu.erase(std::find(fu.begin(), fu.end(), lu));
      fv.erase(std::find(fv.begin(), fv.end(), lv));
      break;
    }
    if (static_cast<int>(t.edges.size()) != v) return random_dtree(d, rng, vertices);
  }
  std::vector<std::pair<int, int>> ins, outs;
  for (size_t v = 0; v < free.size(); ++v) {
    const auto& g = d.gens[static_cast<size_t>(t.vertices[v].gen)];
    for (int leg : free[v]) (g.is_input(leg) ? ins : outs).push_back({static_cast<int>(v), leg});
  }
  std::vector<int> li(ins.size()), lo(outs.size());
  std::iota(li.begin(), li.end(), 1);
  std::iota(lo.begin(), lo.end(), 1);
  std::shuffle(li.begin(), li.end(), rng);
  std::shuffle(lo.begin(), lo.end(), rng);
  for (size_t i = 0; i < ins.size(); ++i) t.inputs.push_back({ins[i].first, ins[i].second, li[i]});
  for (size_t i = 0; i < outs.size(); ++i) {
    const auto& g = d.gens[static_cast<size_t>(t.vertices[static_cast<size_t>(outs[i].first)].gen)];
    t.outputs.push_back({outs[i].first, outs[i].second - g.m, lo[i]});
  }
  return t;
}

std::string dtree_fingerprint(const DioperadPresentation& d, const DioperadTree& t) {
  // what sits at each (vertex, leg): a free label or the far end of an edge
  std::map<std::pair<int, int>, std::string> label;
  std::map<std::pair<int, int>, std::pair<int, int>> link;
  auto m_of = [&](int v) { return d.gens[static_cast<size_t>(t.vertices[static_cast<size_t>(v)].gen)].m; };
  for (const auto& f : t.inputs) label[{f.vertex, f.slot}] = "i" + std::to_string(f.label);
  for (const auto& f : t.outputs) label[{f.vertex, m_of(f.vertex) + f.slot}] = "o" + std::to_string(f.label);
  for (const auto& e : t.edges) {
    std::pair<int, int> a{e.from, m_of(e.from) + e.out}, b{e.to, e.in};
    link[a] = b;
    link[b] = a;
  }
  std::function<std::string(int, int)> walk = [&](int v, int via) {
    const auto& g = d.gens[static_cast<size_t>(t.vertices[static_cast<size_t>(v)].gen)];
    std::string s = g.name + "@" + std::to_string(via) + "[";
    for (int leg = 0; leg < g.legs(); ++leg) {
      if (leg == via) {
        s += "^,";
        continue;
      }
      auto key = std::make_pair(v, leg);
      if (label.count(key))
        s += label[key] + ",";
      else
        s += walk(link[key].first, link[key].second) + ",";
    }
    return s + "]";
  };
  for (const auto& [key, l] : label)
    if (l == "i1" || (t.inputs.empty() && l == "o1")) return l + ":" + walk(key.first, key.second);
  return "?";
}

}  // namespace diop::testing
