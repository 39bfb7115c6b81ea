#include "diop/order.hpp"

#include <algorithm>

#include "diop/rational.hpp"

namespace diop {

std::string order_kind_name(OrderKind k) {
  switch (k) {
    case OrderKind::pathlex: return "pathlex";
    case OrderKind::revpathlex: return "revpathlex";
    case OrderKind::quantumpath: return "quantumpath";
  }
  return "?";
}

OrderKind parse_order_kind(std::string_view s) {
  if (s == "pathlex") return OrderKind::pathlex;
  if (s == "revpathlex") return OrderKind::revpathlex;
  if (s == "quantumpath") return OrderKind::quantumpath;
  throw InputError("unknown order '" + std::string(s) + "'");
}

MonomialOrder MonomialOrder::make(const Alphabet& alpha, OrderKind kind, const std::vector<std::string>& decreasing) {
  MonomialOrder o;
  o.kind = kind;
  const int n = alpha.size();
  o.rank.assign(static_cast<size_t>(n), -1);
  int next = 2 * n + 2;
  for (const auto& name : decreasing) {
    int g = alpha.index_of(name);
    if (g < 0) throw InputError("order lists undeclared generator '" + name + "'");
    if (o.rank[static_cast<size_t>(g)] >= 0) throw InputError("order lists '" + name + "' twice");
    o.rank[static_cast<size_t>(g)] = next--;
  }
  for (int g = 0; g < n; ++g)
    if (o.rank[static_cast<size_t>(g)] < 0) o.rank[static_cast<size_t>(g)] = next--;
  o.is_y.assign(static_cast<size_t>(n), false);
  for (int g = 0; g < n; ++g) o.is_y[static_cast<size_t>(g)] = alpha.gen(g).arity() == 1;
  return o;
}

std::string base_name(std::string_view gen_name) {
  auto u = gen_name.find('_');
  return std::string(gen_name.substr(0, u));
}

MonomialOrder MonomialOrder::make_by_base(const Alphabet& alpha, OrderKind kind, const std::vector<std::string>& decreasing) {
  Alphabet bases;
  bases.mode = alpha.mode;
  std::vector<int> base_of;
  for (const auto& g : alpha.gens) {
    std::string b = base_name(g.name);
    int i = bases.index_of(b);
    if (i < 0) {
      i = bases.size();
      bases.gens.push_back({b, g.sig, g.weight, g.hdegree});
    }
    base_of.push_back(i);
  }
  MonomialOrder ob = make(bases, kind, decreasing);
  MonomialOrder o;
  o.kind = kind;
  for (size_t g = 0; g < alpha.gens.size(); ++g) {
    o.rank.push_back(ob.rank[static_cast<size_t>(base_of[g])]);
    o.is_y.push_back(alpha.gens[g].arity() == 1);
  }
  return o;
}

namespace {

struct PathData {
  std::vector<std::vector<int>> words;  // by label - 1, root first
  std::vector<int> perm;                // labels left to right
};

PathData path_data(const Alphabet& alpha, const MonomialOrder& o, const Monomial& m) {
  PathData d;
  int n = 0;
  for (auto x : m.code)
    if (Monomial::is_leaf(x)) ++n;
  d.words.resize(static_cast<size_t>(n));
  d.perm.reserve(static_cast<size_t>(n));
  // stack of (rank, remaining children)
  std::vector<std::pair<int, int>> stack;
  std::vector<int> word;
  for (auto x : m.code) {
    if (Monomial::is_leaf(x)) {
      int l = Monomial::leaf_label(x);
      d.words[static_cast<size_t>(l - 1)] = word;
      d.perm.push_back(l);
      while (!stack.empty()) {
        if (--stack.back().second > 0) break;
        stack.pop_back();
        word.pop_back();
      }
    } else {
      int r = o.rank[static_cast<size_t>(x)];
      stack.emplace_back(r, alpha.gen(x).arity());
      word.push_back(r);
    }
  }
  return d;
}

int cmp_int(long a, long b) { return a < b ? -1 : (a > b ? 1 : 0); }

int pathlex(const Alphabet& alpha, const MonomialOrder& o, const Monomial& a, const Monomial& b) {
  if (a.code == b.code) return 0;
  PathData da = path_data(alpha, o, a), db = path_data(alpha, o, b);
  for (size_t i = 0; i < da.words.size(); ++i) {
    const auto& wa = da.words[i];
    const auto& wb = db.words[i];
    if (wa.size() != wb.size()) return cmp_int(static_cast<long>(wa.size()), static_cast<long>(wb.size()));
    for (size_t j = 0; j < wa.size(); ++j)
      if (wa[j] != wb[j]) return cmp_int(wa[j], wb[j]);
  }
  for (size_t i = 0; i < da.perm.size(); ++i)
    if (da.perm[i] != db.perm[i]) return cmp_int(da.perm[i], db.perm[i]);
  return 0;
}

struct QWord {
  long k = 0, l = 0, m = 0;
};

int quantumpath(const Alphabet& alpha, const MonomialOrder& o, const Monomial& a, const Monomial& b) {
  if (a.code == b.code) return 0;
  auto stats = [&](const Monomial& t) {
    std::vector<QWord> out;
    int n = 0;
    for (auto x : t.code)
      if (Monomial::is_leaf(x)) ++n;
    out.resize(static_cast<size_t>(n));
    std::vector<int> stack;  // remaining children per open vertex
    QWord cur;
    std::vector<QWord> saved;
    for (auto x : t.code) {
      if (Monomial::is_leaf(x)) {
        out[static_cast<size_t>(Monomial::leaf_label(x) - 1)] = cur;
        while (!stack.empty()) {
          if (--stack.back() > 0) break;
          stack.pop_back();
          cur = saved.back();
          saved.pop_back();
        }
      } else {
        bool y = o.is_y[static_cast<size_t>(x)];
        saved.push_back(cur);
        if (y) {
          ++cur.l;
        } else {
          ++cur.k;
          cur.m += cur.l;  // every earlier y precedes this x
        }
        stack.push_back(alpha.gen(x).arity());
      }
    }
    return out;
  };
  auto sa = stats(a), sb = stats(b);
  for (size_t i = 0; i < sa.size(); ++i) {
    if (sa[i].k != sb[i].k) return cmp_int(sa[i].k, sb[i].k);
    if (sa[i].l != sb[i].l) return cmp_int(sa[i].l, sb[i].l);
    if (sa[i].m != sb[i].m) return cmp_int(sa[i].m, sb[i].m);
  }
  return pathlex(alpha, o, a, b);
}

}  // namespace

int compare_unchecked(const Alphabet& alpha, const MonomialOrder& o, const Monomial& a, const Monomial& b) {
  switch (o.kind) {
    case OrderKind::pathlex: return pathlex(alpha, o, a, b);
    case OrderKind::revpathlex: return pathlex(alpha, o, b, a);
    case OrderKind::quantumpath: return quantumpath(alpha, o, a, b);
  }
  return 0;
}

int compare(const Alphabet& alpha, const MonomialOrder& o, const Monomial& a, const Monomial& b) {
  if (signature(alpha, a) != signature(alpha, b))
    throw InputError("compare: signatures differ (" + signature(alpha, a).str() + " vs " + signature(alpha, b).str() + ")");
  return compare_unchecked(alpha, o, a, b);
}

}  // namespace diop
