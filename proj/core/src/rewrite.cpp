#include "diop/rewrite.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <thread>
#include <tuple>

#include "diop/enumerate.hpp"

namespace diop {

namespace {
std::atomic<long> g_violations{0};
}

long Rewriter::total_violations() { return g_violations.load(); }

Rewriter::Rewriter(const Presentation& p) : p_(&p) {
  rules_by_root_.assign(static_cast<size_t>(p.alpha.size()), {});
  for (size_t i = 0; i < p.rules.size(); ++i) {
    lhs_views_.push_back(std::make_unique<TreeView>(p.alpha, p.rules[i].lhs));
    const TreeView& v = *lhs_views_.back();
    if (v.is_leaf(0)) throw InputError("rule " + p.rules[i].name + ": left side has no vertex");
    rules_by_root_[static_cast<size_t>(v.gen(0))].push_back(static_cast<int>(i));
  }
}

bool Rewriter::reducible_at_root(const TreeView& v) const {
  if (v.is_leaf(0)) return false;
  for (int r : rules_by_root_[static_cast<size_t>(v.gen(0))])
    if (match_at(v, *lhs_views_[static_cast<size_t>(r)], 0)) return true;
  return false;
}

std::optional<Embedding> Rewriter::find_redex(const Monomial& m, int* rule) const {
  TreeView v(p_->alpha, m);
  for (int pos : v.internal()) {
    std::optional<Embedding> best;
    int best_rule = -1;
    std::vector<int> best_key;
    for (int r : rules_by_root_[static_cast<size_t>(v.gen(pos))]) {
      auto e = match_at(v, *lhs_views_[static_cast<size_t>(r)], pos);
      if (!e) continue;
      auto key = e->sorted_image();
      if (!best || key < best_key) {
        best = std::move(e);
        best_key = std::move(key);
        best_rule = r;
      }
    }
    if (best) {
      if (rule) *rule = best_rule;
      return best;
    }
  }
  return std::nullopt;
}

bool Rewriter::is_reducible(const Monomial& m) const {
  TreeView v(p_->alpha, m);
  for (int pos : v.internal())
    for (int r : rules_by_root_[static_cast<size_t>(v.gen(pos))])
      if (match_at(v, *lhs_views_[static_cast<size_t>(r)], pos)) return true;
  return false;
}

namespace {

// Index of the term to reduce next: the order-largest reducible one, or the
// first reducible one in code order without an order certificate.
const Term* pick(const Rewriter& rw, const Polynomial& p) {
  const Presentation& P = rw.presentation();
  const Term* best = nullptr;
  for (const auto& t : p.terms()) {
    if (P.certificate() == Certificate::order && best &&
        compare_unchecked(P.alpha, *P.order, t.mono, best->mono) <= 0)
      continue;
    if (!rw.is_reducible(t.mono)) continue;
    best = &t;
    if (P.certificate() != Certificate::order) break;
  }
  return best;
}

}  // namespace

ReduceResult Rewriter::reduce_step(const Polynomial& p) const {
  const Term* t = pick(*this, p);
  if (!t) return {p, false};
  int r = -1;
  auto e = find_redex(t->mono, &r);
  Polynomial out = p;
  Polynomial rep = t->coef * replace(p_->alpha, t->mono, *e, p_->rules[static_cast<size_t>(r)].rhs);
  out -= Polynomial(t->mono, t->coef);
  out += rep;
  return {out, true};
}

NormalFormResult Rewriter::normal_form(const Polynomial& p, long budget) const {
  NormalFormResult res;
  const Presentation& P = *p_;
  const bool by_order = P.certificate() == Certificate::order;
  std::map<Monomial, Rational> work, done;
  for (const auto& t : p.terms()) work.emplace(t.mono, t.coef);
  auto add = [](std::map<Monomial, Rational>& into, const Monomial& m, const Rational& c) {
    auto [it, fresh] = into.emplace(m, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) into.erase(it);
    }
  };
  while (!work.empty()) {
    auto it = work.begin();
    if (by_order) {
      for (auto jt = std::next(work.begin()); jt != work.end(); ++jt)
        if (compare_unchecked(P.alpha, *P.order, jt->first, it->first) > 0) it = jt;
    }
    Monomial m = it->first;
    Rational c = it->second;
    work.erase(it);
    int r = -1;
    auto e = find_redex(m, &r);
    if (!e) {
      add(done, m, c);
      continue;
    }
    if (res.steps >= budget) {
      res.budget_hit = true;
      add(work, m, c);
      break;
    }
    ++res.steps;
    Polynomial rep = replace(P.alpha, m, *e, P.rules[static_cast<size_t>(r)].rhs);
    for (const auto& t : rep.terms()) {
      if (!certified_step(P, m, t.mono)) {
        ++res.violations;
        ++g_violations;
      }
      add(work, t.mono, c * t.coef);
    }
  }
  std::vector<Term> terms;
  for (auto& [m, c] : done) terms.push_back({c, m});
  for (auto& [m, c] : work) terms.push_back({c, m});
  res.poly = Polynomial::from_terms(std::move(terms));
  return res;
}

// ---------------------------------------------------------------------------
// overlaps

namespace {

// Merges the subtrees of two patterns rooted at the same host vertex.
// Leaves are written with label 1 as placeholders.
bool merge_rec(const TreeView& a, int pa, const TreeView& b, int pb, std::vector<std::int32_t>& out) {
  const auto& ca = a.monomial().code;
  const auto& cb = b.monomial().code;
  bool la = a.is_leaf(pa), lb = b.is_leaf(pb);
  if (la || lb) {
    if (a.out_color(pa) != b.out_color(pb)) return false;
    const TreeView& src = la && !lb ? b : a;
    int ps = la && !lb ? pb : pa;
    const auto& cs = la && !lb ? cb : ca;
    for (int i = ps; i < src.end(ps); ++i) {
      auto x = cs[static_cast<size_t>(i)];
      out.push_back(Monomial::is_leaf(x) ? Monomial::leaf_code(1, Monomial::leaf_color(x)) : x);
    }
    return true;
  }
  if (a.gen(pa) != b.gen(pb)) return false;
  out.push_back(a.gen(pa));
  const auto& ka = a.children(pa);
  const auto& kb = b.children(pb);
  for (size_t j = 0; j < ka.size(); ++j)
    if (!merge_rec(a, ka[j], b, kb[j], out)) return false;
  return true;
}

// Host shape with `over` glued so that its root sits on vertex `at` of `under`.
std::optional<std::vector<std::int32_t>> glue(const TreeView& under, int at, const TreeView& over) {
  std::vector<std::int32_t> out;
  const auto& cu = under.monomial().code;
  auto unlabeled = [](std::int32_t x) { return Monomial::is_leaf(x) ? Monomial::leaf_code(1, Monomial::leaf_color(x)) : x; };
  for (int i = 0; i < at; ++i) out.push_back(unlabeled(cu[static_cast<size_t>(i)]));
  if (!merge_rec(under, at, over, 0, out)) return std::nullopt;
  for (int i = under.end(at); i < static_cast<int>(cu.size()); ++i) out.push_back(unlabeled(cu[static_cast<size_t>(i)]));
  return out;
}

// All labelings of a shape satisfying the mode's leaf convention.
void labelings(const Alphabet& alpha, const Monomial& shape, std::vector<Monomial>& out) {
  TreeView v(alpha, shape);
  const int n = v.leaf_count();
  if (alpha.mode == Mode::planar) {
    Monomial m = shape;
    int next = 1;
    for (auto& x : m.code)
      if (Monomial::is_leaf(x)) x = Monomial::leaf_code(next++, Monomial::leaf_color(x));
    out.push_back(std::move(m));
    return;
  }
  std::vector<int> size(static_cast<size_t>(v.size()), 0);
  for (int p = v.size() - 1; p >= 0; --p) {
    if (v.is_leaf(p))
      size[static_cast<size_t>(p)] = 1;
    else
      for (int c : v.children(p)) size[static_cast<size_t>(p)] += size[static_cast<size_t>(c)];
  }
  // assign[p] = label set of subtree p as a bitmask
  std::vector<std::uint32_t> assign(static_cast<size_t>(v.size()), 0);
  std::vector<int> order = v.internal();  // preorder
  std::function<void(size_t)> rec;
  std::function<void(int, size_t, std::uint32_t, size_t)> split;
  rec = [&](size_t idx) {
    if (idx == order.size()) {
      Monomial m = shape;
      for (int p : v.leaves_in_order()) {
        int l = std::countr_zero(assign[static_cast<size_t>(p)]) + 1;
        m.code[static_cast<size_t>(p)] = Monomial::leaf_code(l, v.out_color(p));
      }
      out.push_back(std::move(m));
      return;
    }
    split(order[idx], 0, assign[static_cast<size_t>(order[idx])], idx);
  };
  split = [&](int p, size_t j, std::uint32_t rest, size_t idx) {
    const auto& ch = v.children(p);
    if (j == ch.size()) {
      rec(idx + 1);
      return;
    }
    int need = size[static_cast<size_t>(ch[j])];
    std::uint32_t low = rest & (~rest + 1);
    std::uint32_t others = rest & ~low;
    if (j + 1 == ch.size()) {
      assign[static_cast<size_t>(ch[j])] = rest;
      split(p, j + 1, 0, idx);
      return;
    }
    for (std::uint32_t s = others;; s = (s - 1) & others) {
      if (std::popcount(s) == need - 1) {
        assign[static_cast<size_t>(ch[j])] = low | s;
        split(p, j + 1, rest & ~(low | s), idx);
      }
      if (s == 0) break;
    }
  };
  assign[0] = (n == 32) ? ~0u : ((1u << n) - 1);
  if (v.is_leaf(0)) return;
  rec(0);
}

}  // namespace

std::vector<Overlap> enumerate_overlaps(const Presentation& p, int rule_a, int rule_b) {
  const Alphabet& alpha = p.alpha;
  const Monomial& A = p.rules[static_cast<size_t>(rule_a)].lhs;
  const Monomial& B = p.rules[static_cast<size_t>(rule_b)].lhs;
  TreeView va(alpha, A), vb(alpha, B);
  std::set<Monomial> shapes;
  for (int at : va.internal())
    if (auto s = glue(va, at, vb)) shapes.insert(Monomial{*s});
  for (int at : vb.internal())
    if (auto s = glue(vb, at, va)) shapes.insert(Monomial{*s});

  std::vector<Overlap> out;
  std::set<std::tuple<Monomial, std::vector<int>, std::vector<int>>> seen;
  for (const auto& shape : shapes) {
    std::vector<Monomial> hosts;
    labelings(alpha, shape, hosts);
    for (auto& host : hosts) {
      if (!validate(alpha, host)) continue;
      TreeView hv(alpha, host);
      auto ea = find_divisors(hv, va);
      if (ea.empty()) continue;
      auto eb = find_divisors(hv, vb);
      const size_t nv = hv.internal().size();
      for (const auto& x : ea) {
        auto ix = x.sorted_image();
        for (const auto& y : eb) {
          auto iy = y.sorted_image();
          if (rule_a == rule_b && !(ix < iy)) continue;
          std::vector<int> uni, inter;
          std::set_union(ix.begin(), ix.end(), iy.begin(), iy.end(), std::back_inserter(uni));
          std::set_intersection(ix.begin(), ix.end(), iy.begin(), iy.end(), std::back_inserter(inter));
          if (inter.empty() || uni.size() != nv) continue;
          if (!seen.emplace(host, ix, iy).second) continue;
          out.push_back({host, rule_a, rule_b, x, y});
        }
      }
    }
  }
  return out;
}

Polynomial s_polynomial(const Presentation& p, const Overlap& o) {
  Polynomial a = replace(p.alpha, o.host, o.emb_a, p.rules[static_cast<size_t>(o.rule_a)].rhs);
  Polynomial b = replace(p.alpha, o.host, o.emb_b, p.rules[static_cast<size_t>(o.rule_b)].rhs);
  return a - b;
}

ConfluenceReport check_confluence(const Presentation& p, long budget, unsigned threads) {
  if (p.certificate() == Certificate::none) throw InputError("confluence check needs an order or measure certificate");
  Rewriter rw(p);
  std::vector<std::pair<int, int>> pairs;
  const int n = static_cast<int>(p.rules.size());
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) pairs.emplace_back(a, b);
  struct Slot {
    long checked = 0;
    std::vector<ConfluenceFailure> failures;
    bool budget_hit = false;
  };
  std::vector<Slot> slots(pairs.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < pairs.size(); i = next++) {
      auto overlaps = enumerate_overlaps(p, pairs[i].first, pairs[i].second);
      for (auto& o : overlaps) {
        ++slots[i].checked;
        auto nf = rw.normal_form(s_polynomial(p, o), budget);
        if (nf.budget_hit) slots[i].budget_hit = true;
        if (!nf.poly.is_zero() || nf.budget_hit) slots[i].failures.push_back({std::move(o), std::move(nf.poly), nf.budget_hit});
      }
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<size_t>(1, pairs.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  ConfluenceReport rep;
  for (auto& s : slots) {
    rep.overlaps_checked += s.checked;
    rep.step_budget_hit = rep.step_budget_hit || s.budget_hit;
    for (auto& f : s.failures) rep.failures.push_back(std::move(f));
  }
  return rep;
}

CompletionResult complete(const Presentation& p, int max_weight, int max_rounds) {
  if (p.certificate() != Certificate::order) throw InputError("completion needs an order certificate");
  CompletionResult res;
  res.presentation = p;
  Presentation& q = res.presentation;
  int counter = 0;
  while (true) {
    if (res.rounds >= max_rounds) throw GuardExceeded("completion did not close within " + std::to_string(max_rounds) + " rounds");
    ++res.rounds;
    ConfluenceReport rep = check_confluence(q);
    bool skipped = false;
    std::vector<RewriteRule> fresh;
    for (const auto& f : rep.failures) {
      if (weight(q.alpha, f.overlap.host) > max_weight) {
        skipped = true;
        continue;
      }
      Polynomial r = f.residual;
      if (!fresh.empty()) {
        // reduce against the rules found earlier in this round
        Presentation tmp = q;
        tmp.rules.insert(tmp.rules.end(), fresh.begin(), fresh.end());
        r = Rewriter(tmp).normal_form(r).poly;
      }
      auto rule = orient(q, "c" + std::to_string(++counter), r);
      if (rule) fresh.push_back(std::move(*rule));
    }
    if (fresh.empty()) {
      res.closed = !skipped;
      return res;
    }
    res.added += static_cast<int>(fresh.size());
    for (auto& r : fresh) q.rules.push_back(std::move(r));
  }
}

Presentation leading_monomial_operad(const Presentation& p) {
  Presentation q = p;
  q.name = "gr_" + p.name;
  for (auto& r : q.rules) r.rhs = Polynomial();
  return q;
}

Presentation monomial_quadratic_dual(const Presentation& p) {
  std::set<Monomial> rel;
  for (const auto& r : p.rules) {
    if (!r.rhs.is_zero()) throw InputError("quadratic dual: rule " + r.name + " is not monomial");
    if (weight(p.alpha, r.lhs) != 2 || vertex_count(r.lhs) != 2) throw InputError("quadratic dual: rule " + r.name + " is not quadratic");
    rel.insert(r.lhs);
  }
  int maxar = 1;
  for (const auto& g : p.alpha.gens) maxar = std::max(maxar, g.arity());
  Presentation q = p;
  q.name = p.name + "_dual";
  q.rules.clear();
  int k = 0;
  for (int n = 1; n <= 2 * maxar - 1; ++n)
    for (const auto& sig : all_signatures(n))
      for (auto& m : enumerate_monomials(p.alpha, sig, 2)) {
        if (vertex_count(m) != 2 || rel.count(m)) continue;
        q.rules.push_back({"q" + std::to_string(++k), m, Polynomial()});
      }
  return q;
}

}  // namespace diop
