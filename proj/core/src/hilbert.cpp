#include "diop/hilbert.hpp"

#include <unordered_map>

#include "diop/enumerate.hpp"
#include "diop/linalg.hpp"
#include "diop/rewrite.hpp"

namespace diop {

long count_normal_forms(const Presentation& p, const Signature& sig, int weight) {
  Rewriter rw(p);
  Enumerator e(p.alpha, sig, &rw);
  return static_cast<long>(e.block(weight).size());
}

long oracle_dim(const Presentation& p, const Signature& sig, int weight, size_t guard) {
  std::vector<Monomial> mons = enumerate_monomials(p.alpha, sig, weight, guard);
  if (guard && mons.size() > guard) throw GuardExceeded("oracle block has " + std::to_string(mons.size()) + " monomials");
  std::unordered_map<Monomial, int, MonomialHash> index;
  index.reserve(mons.size());
  for (size_t i = 0; i < mons.size(); ++i) index.emplace(mons[i], static_cast<int>(i));
  std::vector<std::unique_ptr<TreeView>> lhs;
  for (const auto& r : p.rules) lhs.push_back(std::make_unique<TreeView>(p.alpha, r.lhs));
  Eliminator elim;
  for (size_t i = 0; i < mons.size(); ++i) {
    TreeView hv(p.alpha, mons[i]);
    for (size_t r = 0; r < p.rules.size(); ++r) {
      for (const auto& e : find_divisors(hv, *lhs[r])) {
        std::vector<std::pair<int, Rational>> row;
        row.emplace_back(static_cast<int>(i), Rational(1));
        for (const auto& t : p.rules[r].rhs.terms()) {
          Monomial g = graft_replacement(hv, e, t.mono);
          auto it = index.find(g);
          if (it == index.end()) throw InputError("oracle: rule " + p.rules[r].name + " is not weight-homogeneous");
          row.emplace_back(it->second, -t.coef);
        }
        elim.add(make_row(std::move(row)));
      }
    }
  }
  return static_cast<long>(mons.size()) - elim.rank();
}

Signature dioperad_signature(int m, int n) {
  Signature s;
  if (n >= 1) {
    s.inputs.assign(static_cast<size_t>(m), Color::straight);
    s.inputs.insert(s.inputs.end(), static_cast<size_t>(n - 1), Color::dotted);
    s.output = Color::straight;
  } else {
    s.inputs.assign(static_cast<size_t>(std::max(0, m - 1)), Color::straight);
    s.output = Color::dotted;
  }
  return s;
}

namespace {

QPoly block_series(const Presentation& p, const Signature& sig, DimsMethod method, size_t guard, const Rewriter* rw) {
  QPoly out;
  if (sig.arity() == 0) return out;
  int wmax = weight_bound(p.alpha, sig.arity());
  if (method == DimsMethod::normal_forms) {
    Enumerator e(p.alpha, sig, rw);
    for (int w = 0; w <= wmax; ++w) out += QPoly(static_cast<long>(e.block(w).size()), w);
  } else {
    for (int w = 0; w <= wmax; ++w) out += QPoly(oracle_dim(p, sig, w, guard), w);
  }
  return out;
}

void interleavings(int a, int b, std::vector<Color>& cur, std::vector<std::vector<Color>>& out) {
  if (a == 0 && b == 0) {
    out.push_back(cur);
    return;
  }
  if (a > 0) {
    cur.push_back(Color::straight);
    interleavings(a - 1, b, cur, out);
    cur.pop_back();
  }
  if (b > 0) {
    cur.push_back(Color::dotted);
    interleavings(a, b - 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::map<std::pair<int, int>, QPoly> dioperad_dims(const Presentation& p, int max_total, DimsMethod method, size_t guard) {
  if (method == DimsMethod::automatic)
    method = check_confluence(p).confluent() ? DimsMethod::normal_forms : DimsMethod::oracle;
  std::map<std::pair<int, int>, QPoly> out;
  Rewriter rw(p);
  for (int total = 1; total <= max_total; ++total)
    for (int m = 0; m <= total; ++m) {
      int n = total - m;
      Signature sig = dioperad_signature(m, n);
      if (p.alpha.mode == Mode::shuffle) {
        out[{m, n}] = block_series(p, sig, method, guard, &rw);
        continue;
      }
      int ns = n >= 1 ? m : m - 1;
      int nd = n >= 1 ? n - 1 : n;
      QPoly sum;
      if (ns >= 0 && ns + nd > 0) {
        std::vector<std::vector<Color>> seqs;
        std::vector<Color> cur;
        interleavings(ns, nd, cur, seqs);
        for (const auto& s : seqs) {
          Signature t{s, sig.output};
          sum += block_series(p, t, method, guard, &rw);
        }
      }
      Integer mult = factorial(static_cast<unsigned>(std::max(ns, 0))) * factorial(static_cast<unsigned>(nd));
      out[{m, n}] = QPoly(Rational(mult)) * sum;
    }
  return out;
}

Integer lieb_dim_formula(int m, int n) {
  Integer f = factorial(static_cast<unsigned>(m + n - 2));
  return f * f / (factorial(static_cast<unsigned>(m - 1)) * factorial(static_cast<unsigned>(n - 1)));
}

}  // namespace diop
