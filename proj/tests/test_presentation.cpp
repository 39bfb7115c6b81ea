#include <doctest.h>

#include <random>

#include "diop/corpus.hpp"
#include "diop/enumerate.hpp"
#include "diop/presentation.hpp"
#include "diop/rewrite.hpp"

using namespace diop;

TEST_SUITE("presentation") {

TEST_CASE("empty presentation") {
  auto p = parse_presentation("operad shuffle\n");
  CHECK(p.alpha.size() == 0);
  CHECK(p.rules.empty());
  CHECK(p.certificate() == Certificate::none);
}

TEST_CASE("relations are oriented on the declared order") {
  auto p = parse_presentation(
      "operad shuffle\norder pathlex\ngen x : (s,s) -> s\n"
      "rel assoc : x(x(1,2),3) - x(1,x(2,3)) = 0\n");
  REQUIRE(p.rules.size() == 1);
  CHECK(format_term(p.alpha, p.rules[0].lhs) == "x(x(1,2),3)");
  CHECK(format_polynomial(p.alpha, p.rules[0].rhs) == "x(1,x(2,3))");
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_presentation("operad shuffle\nrule r : y(1,2) -> 0\n"), InputError);
  CHECK_THROWS_AS(parse_presentation("operad shuffle\ngen x : (s,s) -> s\nrel r : x(1,2) = 0\n"), InputError);
  CHECK_THROWS_AS(parse_presentation("operad shuffle\ngen x : (s,q) -> s\n"), InputError);
  CHECK_THROWS_AS(parse_presentation("operad shuffle\ngen x : (s,s) -> s\ngen x : (s,s) -> s\n"), InputError);
  CHECK_THROWS_AS(
      parse_presentation("operad shuffle\norder pathlex\ngen x : (s,s) -> s\nrule r : x(1,x(2,3)) -> x(x(1,2),3)\n"),
      InputError);
}

TEST_CASE("frob: six colored generators, one normal form per admissible quadratic signature") {
  auto p = corpus("frob");
  CHECK(p.alpha.size() == 6);
  CHECK(p.rules.size() == 40);
  Rewriter rw(p);
  int normal = 0;
  for (const auto& sig : all_signatures(3)) {
    auto block = enumerate_monomials(p.alpha, sig, 2);
    int c = 0;
    for (const auto& m : block)
      if (!rw.is_reducible(m)) ++c;
    CHECK(c <= 1);
    normal += c;
  }
  CHECK(normal == 14);
}

TEST_CASE("lieb_tri: three binary generators, one unary, five rules") {
  auto p = corpus("lieb_tri");
  CHECK(p.alpha.size() == 4);
  int unary = 0;
  for (const auto& g : p.alpha.gens) unary += g.arity() == 1;
  CHECK(unary == 1);
  CHECK(p.rules.size() == 5);
}

TEST_CASE("v_d and w_d shapes") {
  auto v = corpus("v_d");
  auto w = corpus("w_d");
  CHECK(v.alpha.mode == Mode::planar);
  CHECK(v.alpha.size() == 4);
  int unary = 0;
  for (const auto& g : v.alpha.gens)
    if (g.arity() == 1) {
      ++unary;
      CHECK(g.hdegree == 1);
    }
  CHECK(unary == 1);
  REQUIRE(w.rules.size() == v.rules.size());
  int flipped = 0;
  for (size_t i = 0; i < v.rules.size(); ++i) {
    CHECK(v.rules[i].lhs == w.rules[i].lhs);
    if (v.rules[i].rhs == -w.rules[i].rhs && !(v.rules[i].rhs == w.rules[i].rhs)) ++flipped;
  }
  CHECK(flipped == 2);
}

TEST_CASE("plieb_dual has eight binary generators") {
  auto p = corpus("plieb_dual");
  CHECK(p.alpha.size() == 8);
  for (const auto& g : p.alpha.gens) CHECK(g.arity() == 2);
  for (const auto& r : p.rules) CHECK(weight(p.alpha, r.lhs) == 2);
}

TEST_CASE("canonicalize merges and drops zeros") {
  auto p = parse_presentation("operad shuffle\ngen x : (s,s) -> s\ngen y : (s,s) -> d\n");
  auto m = parse_term(p.alpha, "x(1,2)");
  CHECK(canonicalize_polynomial(p.alpha, {{1, m}, {-1, m}}).is_zero());
  auto half = canonicalize_polynomial(p.alpha, {{Rational(1, 2), m}, {Rational(1, 2), m}});
  REQUIRE(half.size() == 1);
  CHECK(half.terms()[0].coef == 1);
  CHECK_THROWS_AS(canonicalize_polynomial(p.alpha, {{1, m}, {1, parse_term(p.alpha, "y(1,2)")}}), InputError);
}

TEST_CASE("all-straight Jacobi orients to two right-hand terms") {
  auto p = corpus("lieb_tri");
  for (const auto& r : p.rules) {
    auto sig = signature(p.alpha, r.lhs);
    bool straight = sig.output == Color::straight;
    for (Color c : sig.inputs) straight = straight && c == Color::straight;
    if (straight && weight(p.alpha, r.lhs) == 2) CHECK(r.rhs.size() == 2);
  }
}

TEST_CASE("serialization round trip for every corpus entry") {
  for (const auto& name : corpus_names()) {
    auto p = corpus(name);
    auto q = parse_presentation(serialize_presentation(p));
    CHECK(q.alpha.size() == p.alpha.size());
    REQUIRE(q.rules.size() == p.rules.size());
    for (size_t i = 0; i < p.rules.size(); ++i) {
      CHECK(q.rules[i].lhs == p.rules[i].lhs);
      CHECK(q.rules[i].rhs == p.rules[i].rhs);
    }
    CHECK(q.certificate() == p.certificate());
  }
}

TEST_CASE("corpus rules respect their certificates") {
  for (const auto& name : corpus_names()) CHECK_NOTHROW(check_certificate(corpus(name)));
  CHECK_THROWS_AS(corpus("nonexistent"), InputError);
}

TEST_CASE("rational field axioms on random triples") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> d(-50, 50);
  auto r = [&] {
    int den = d(rng);
    if (den == 0) den = 1;
    return Rational(d(rng), den);
  };
  for (int i = 0; i < 300; ++i) {
    Rational a = r(), b = r(), c = r();
    a.canonicalize();
    b.canonicalize();
    c.canonicalize();
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    if (a != 0) CHECK(a * (1 / a) == 1);
    CHECK(parse_rational(to_string(a)) == a);
  }
}

}  // TEST_SUITE
