#include <doctest.h>

#include <algorithm>
#include <set>

#include "diop/corpus.hpp"
#include "diop/enumerate.hpp"
#include "diop/hilbert.hpp"
#include "diop/rewrite.hpp"
#include "support.hpp"

using namespace diop;
using diop::testing::Rng;

namespace {

int rule_index(const Presentation& p, const std::string& name) {
  for (size_t i = 0; i < p.rules.size(); ++i)
    if (p.rules[i].name == name) return static_cast<int>(i);
  FAIL("no rule " << name);
  return -1;
}

// Overlaps found by scanning every host of bounded weight and pairing up
// embeddings of the two left sides, with the same conventions as
// enumerate_overlaps (unordered pairs when a == b).
size_t naive_overlap_count(const Presentation& p, int a, int b) {
  const auto& A = p.rules[static_cast<size_t>(a)].lhs;
  const auto& B = p.rules[static_cast<size_t>(b)].lhs;
  int wmax = vertex_count(A) + vertex_count(B) - 1;
  int nmax = arity(A) + arity(B);
  size_t count = 0;
  for (int n = 1; n <= nmax; ++n)
    for (const auto& sig : all_signatures(n))
      for (int w = std::max(vertex_count(A), vertex_count(B)); w <= wmax; ++w)
        for (const auto& host : diop::testing::brute_force_monomials(p.alpha, sig, w)) {
          auto ea = find_divisors(p.alpha, host, A);
          auto eb = find_divisors(p.alpha, host, B);
          for (const auto& x : ea)
            for (const auto& y : eb) {
              auto ix = x.sorted_image(), iy = y.sorted_image();
              if (a == b && !(ix < iy)) continue;
              std::set<int> uni(ix.begin(), ix.end());
              uni.insert(iy.begin(), iy.end());
              std::vector<int> inter;
              std::set_intersection(ix.begin(), ix.end(), iy.begin(), iy.end(), std::back_inserter(inter));
              if (!inter.empty() && static_cast<int>(uni.size()) == w) ++count;
            }
        }
  return count;
}

}  // namespace

TEST_SUITE("rewrite") {

TEST_CASE("irreducible monomials are left alone") {
  auto p = corpus("frob");
  Rewriter rw(p);
  auto m = parse_term(p.alpha, "m_ss_s(1,2)");
  auto r = rw.reduce_step(Polynomial(m));
  CHECK_FALSE(r.applied);
  CHECK(r.poly == Polynomial(m));
  CHECK(rw.normal_form(Polynomial()).poly.is_zero());
}

TEST_CASE("each V rule fires in one step") {
  auto p = corpus("v_d");
  Rewriter rw(p);
  for (const auto& r : p.rules) {
    auto s = rw.reduce_step(Polynomial(r.lhs));
    CHECK(s.applied);
    CHECK(s.poly == r.rhs);
  }
}

TEST_CASE("frob normal forms are the unique irreducible monomial") {
  auto p = corpus("frob");
  Rewriter rw(p);
  Rng rng(11);
  int tested = 0;
  while (tested < 40) {
    auto m = diop::testing::random_monomial(p.alpha, rng, 4, rng() % 2 ? Color::straight : Color::dotted);
    if (!m) continue;
    auto sig = signature(p.alpha, *m);
    std::vector<Monomial> irreducible;
    for (const auto& x : enumerate_monomials(p.alpha, sig, 4))
      if (!rw.is_reducible(x)) irreducible.push_back(x);
    auto nf = rw.normal_form(Polynomial(*m));
    CHECK_FALSE(nf.budget_hit);
    CHECK(nf.violations == 0);
    REQUIRE(irreducible.size() == 1);
    REQUIRE(nf.poly.size() == 1);
    CHECK(nf.poly.terms()[0].mono == irreducible[0]);
    CHECK(nf.poly.terms()[0].coef == 1);
    ++tested;
  }
}

TEST_CASE("reduction is linear") {
  auto p = corpus("lieb");
  Rewriter rw(p);
  Rng rng(2);
  for (int i = 0; i < 30; ++i) {
    auto a = diop::testing::random_monomial(p.alpha, rng, 3, Color::straight);
    if (!a) continue;
    auto sig = signature(p.alpha, *a);
    auto block = enumerate_monomials(p.alpha, sig, 3);
    const auto& b = block[rng() % block.size()];
    Polynomial sum = Rational(2, 3) * Polynomial(*a) + Rational(-5) * Polynomial(b);
    auto lhs = rw.normal_form(sum).poly;
    auto rhs = Rational(2, 3) * rw.normal_form(Polynomial(*a)).poly + Rational(-5) * rw.normal_form(Polynomial(b)).poly;
    CHECK(lhs == rhs);
  }
}

TEST_CASE("overlaps between rules that share no generator") {
  auto p = parse_presentation(
      "operad shuffle\norder pathlex\ngen x : (s,s) -> s\ngen y : (d,d) -> d\n"
      "rule a : x(x(1,2),3) -> x(1,x(2,3))\nrule b : y(y(1,2),3) -> y(1,y(2,3))\n");
  CHECK(enumerate_overlaps(p, 0, 1).empty());
}

TEST_CASE("overlap enumeration matches the naive host scan") {
  for (const char* name : {"lie_shuffle", "assoc_planar", "lieb_tri", "frob"}) {
    auto p = corpus(name);
    const int n = static_cast<int>(p.rules.size());
    for (int a = 0; a < std::min(n, 6); ++a)
      for (int b = a; b < std::min(n, 6); ++b) CHECK(enumerate_overlaps(p, a, b).size() == naive_overlap_count(p, a, b));
  }
}

TEST_CASE("the Yang-Baxter self-overlap is unique") {
  auto p = corpus("lieb_tri");
  int yb = rule_index(p, "yang_baxter_1");
  auto os = enumerate_overlaps(p, yb, yb);
  REQUIRE(os.size() == 1);
  CHECK(vertex_count(os[0].host) == 5);
  CHECK(format_term(p.alpha, os[0].host) == "r_d_s(b_ds_d(1,r_d_s(b_ds_d(2,r_d_s(3)))))");
}

TEST_CASE("S-polynomial of a rule with itself at one embedding vanishes") {
  auto p = corpus("frob");
  Overlap o;
  o.host = p.rules[0].lhs;
  o.rule_a = o.rule_b = 0;
  auto es = find_divisors(p.alpha, o.host, p.rules[0].lhs);
  REQUIRE(es.size() == 1);
  o.emb_a = o.emb_b = es[0];
  CHECK(s_polynomial(p, o).is_zero());
}

TEST_CASE("planar associativity: the pentagon closes") {
  auto p = corpus("assoc_planar");
  REQUIRE(p.rules.size() == 1);
  auto os = enumerate_overlaps(p, 0, 0);
  REQUIRE(os.size() == 1);
  CHECK(format_term(p.alpha, os[0].host) == "m(m(m(1,2),3),4)");
  auto s = s_polynomial(p, os[0]);
  CHECK(s.size() == 2);
  CHECK(Rewriter(p).normal_form(s).poly.is_zero());
}

TEST_CASE("confluence verdicts") {
  for (const char* name : {"frob", "lieb", "lieb_tri", "v_d", "com_shuffle", "lie_shuffle", "assoc_planar"})
    CHECK_MESSAGE(check_confluence(corpus(name)).confluent(), name);
  auto w = check_confluence(corpus("w_d"));
  CHECK_FALSE(w.confluent());
  CHECK(w.failures.size() >= 1);
}

TEST_CASE("complete leaves a convergent system alone") {
  auto p = corpus("lieb_tri");
  auto c = complete(p, 4, 5);
  CHECK(c.closed);
  CHECK(c.added == 0);
  CHECK(c.presentation.rules.size() == p.rules.size());
}

TEST_CASE("completing lieb adds no rules") {
  auto c = complete(corpus("lieb"), 3, 5);
  CHECK(c.added == 0);
  CHECK(c.closed);
}

TEST_CASE("completing w_d kills the one-unary two-binary words") {
  auto w = corpus("w_d");
  auto c = complete(w, 3, 10);
  CHECK(c.added > 0);
  for (int n = 1; n <= 3; ++n)
    for (const auto& sig : all_signatures(n))
      for (int k = 1; k <= 3; ++k) CHECK(count_normal_forms(c.presentation, sig, k) == oracle_dim(w, sig, k));
}

TEST_CASE("completion guard") {
  CHECK_THROWS_AS(complete(corpus("w_d"), 3, 0), GuardExceeded);
}

TEST_CASE("leading monomial operads") {
  auto g = leading_monomial_operad(corpus("lieb_tri"));
  CHECK(g.is_monomial());
  REQUIRE(g.rules.size() == 5);
  auto p = corpus("lieb_tri");
  for (size_t i = 0; i < 5; ++i) CHECK(g.rules[i].lhs == p.rules[i].lhs);
  auto gg = leading_monomial_operad(g);
  CHECK(gg.rules.size() == g.rules.size());
}

TEST_CASE("quadratic dual of gr(frob)") {
  auto g = leading_monomial_operad(corpus("frob"));
  auto d = monomial_quadratic_dual(g);
  CHECK(d.is_monomial());
  // the dual's relations are the normal forms of frob at weight 2
  auto frob = corpus("frob");
  Rewriter rw(frob);
  std::set<Monomial> normal;
  for (const auto& sig : all_signatures(3))
    for (const auto& m : enumerate_monomials(g.alpha, sig, 2))
      if (!rw.is_reducible(m)) normal.insert(m);
  std::set<Monomial> rel;
  for (const auto& r : d.rules) rel.insert(r.lhs);
  CHECK(normal.size() == 14);
  CHECK(rel == normal);
  auto dd = monomial_quadratic_dual(d);
  std::set<Monomial> back, orig;
  for (const auto& r : dd.rules) back.insert(r.lhs);
  for (const auto& r : g.rules) orig.insert(r.lhs);
  CHECK(back == orig);
  auto none = parse_presentation("operad shuffle\ngen x : (s,s) -> s\n");
  CHECK(monomial_quadratic_dual(none).rules.size() == 3);
}

TEST_CASE("quadratic dual rejects non-monomial input") {
  CHECK_THROWS_AS(monomial_quadratic_dual(corpus("frob")), InputError);
}

}  // TEST_SUITE
