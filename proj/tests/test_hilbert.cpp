#include <doctest.h>

#include "diop/corpus.hpp"
#include "diop/enumerate.hpp"
#include "diop/hilbert.hpp"
#include "diop/rewrite.hpp"
#include "diop/series.hpp"
#include "support.hpp"

using namespace diop;

namespace {

long factorial_l(int n) {
  long r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

Rational total(const QPoly& p) {
  Rational s;
  for (const auto& [e, c] : p.coeffs()) s += c;
  return s;
}

}  // namespace

TEST_SUITE("hilbert") {

TEST_CASE("oracle agrees with the grafting ideal oracle") {
  for (const char* name : {"frob", "lieb_tri", "com_shuffle", "lie_shuffle", "w_d"}) {
    auto p = corpus(name);
    for (int n = 1; n <= 4; ++n)
      for (const auto& sig : all_signatures(n))
        for (int w = 1; w <= 3; ++w) CHECK(oracle_dim(p, sig, w) == diop::testing::brute_force_dim(p, sig, w));
  }
}

TEST_CASE("normal forms count the quotient for confluent entries") {
  for (const char* name : {"frob", "lieb", "lieb_tri", "v_d", "theta_lie", "theta_assoc", "com_shuffle"}) {
    auto p = corpus(name);
    for (int n = 1; n <= 4; ++n)
      for (const auto& sig : all_signatures(n))
        for (int w = 1; w <= 3; ++w) CHECK_MESSAGE(count_normal_forms(p, sig, w) == oracle_dim(p, sig, w), name);
  }
}

TEST_CASE("dioperad signatures") {
  auto s = dioperad_signature(2, 3);
  CHECK(s.output == Color::straight);
  CHECK(s.inputs == std::vector<Color>{Color::straight, Color::straight, Color::dotted, Color::dotted});
  auto z = dioperad_signature(3, 0);
  CHECK(z.output == Color::dotted);
  CHECK(z.inputs.size() == 2);
}

TEST_CASE("Frobenius dims are one") {
  auto d = dioperad_dims(corpus("frob"), 6, DimsMethod::oracle);
  for (const auto& [mn, v] : d) {
    auto [m, n] = mn;
    if (m >= 1 && n >= 1) CHECK(v == QPoly(1, m + n - 2));
  }
  CHECK(d == dioperad_dims(corpus("frob"), 6, DimsMethod::normal_forms));
}

TEST_CASE("Lie bialgebra formula") {
  CHECK(lieb_dim_formula(2, 2) == 4);
  CHECK(lieb_dim_formula(3, 2) == 18);
  CHECK(lieb_dim_formula(2, 3) == 18);
  CHECK(lieb_dim_formula(3, 3) == 144);
  CHECK(lieb_dim_formula(1, 1) == 1);
  auto d = dioperad_dims(corpus("lieb"), 5, DimsMethod::oracle);
  for (const auto& [mn, v] : d) {
    auto [m, n] = mn;
    if (m >= 1 && n >= 1) CHECK(total(v) == Rational(lieb_dim_formula(m, n)));
  }
}

TEST_CASE("V dims are factorials") {
  auto d = dioperad_dims(corpus("v_d"), 5, DimsMethod::automatic);
  for (const auto& [mn, v] : d) {
    auto [m, n] = mn;
    if (m >= 1 && n >= 1) CHECK(total(v) == factorial_l(m + n - 1));
  }
}

TEST_CASE("W table") {
  auto d = dioperad_dims(corpus("w_d"), 4, DimsMethod::oracle);
  for (int m = 1; m <= 3; ++m) CHECK(total(d.at({m, 1})) == factorial_l(m));
  CHECK(total(d.at({1, 2})) == 2);
  CHECK(total(d.at({0, 3})) == 2);
  CHECK(total(d.at({0, 2})) == 1);
  CHECK(total(d.at({1, 3})) == 0);
}

TEST_CASE("oracle guard") { CHECK_THROWS_AS(oracle_dim(corpus("lieb"), dioperad_signature(3, 3), 4, 10), GuardExceeded); }

TEST_CASE("q-polynomial arithmetic") {
  QPoly a = QPoly(1) + QPoly(2, 1);  // 1 + 2q
  QPoly b = QPoly(1) - QPoly(1, 1);  // 1 - q
  auto c = a * b;                    // 1 + q - 2q^2
  CHECK(c.at(0) == 1);
  CHECK(c.at(1) == 1);
  CHECK(c.at(2) == -2);
  CHECK(c.has_negative_coefficient());
  CHECK_FALSE(a.has_negative_coefficient());
  CHECK(a.substitute_neg_q() == QPoly(1) - QPoly(2, 1));
  CHECK((a - a).is_zero());
}

TEST_CASE("inverting x + x^2 gives signed Catalan numbers") {
  const int N = 7;
  auto x = Series::x(N), y = Series::y(N);
  auto g = invert_pair({x + x * x, y});
  long cat[] = {1, 1, 2, 5, 14, 42, 132};
  for (int k = 1; k <= N; ++k) {
    long s = k % 2 ? 1 : -1;
    CHECK(g.first.at(k, 0) == QPoly(Rational(s * cat[k - 1])));
  }
  CHECK(g.second.coeffs() == y.coeffs());
}

TEST_CASE("inverse composes to the identity both ways") {
  const int N = 6;
  auto x = Series::x(N), y = Series::y(N);
  QPoly q(1, 1);
  SeriesPair f{x + q * (x * y) + x * x * y, y - QPoly(Rational(1, 2)) * (x * x) + q * (y * y * y)};
  auto g = invert_pair(f);
  auto fg = compose_pair(f, g), gf = compose_pair(g, f);
  CHECK(fg.first.coeffs() == x.coeffs());
  CHECK(fg.second.coeffs() == y.coeffs());
  CHECK(gf.first.coeffs() == x.coeffs());
  CHECK(gf.second.coeffs() == y.coeffs());
}

TEST_CASE("singular linear part") {
  auto x = Series::x(4), y = Series::y(4);
  CHECK_THROWS_AS(invert_pair({x + y, x + y}), InputError);
}

TEST_CASE("Koszul series: Frobenius against Lie bialgebras") {
  const int N = 6;
  auto chi_f = series_from_dims(dioperad_dims(corpus("frob"), N, DimsMethod::automatic), N);
  auto chi_l = series_from_dims(dioperad_dims(corpus("lieb"), N, DimsMethod::automatic), N);
  auto r = koszul_series_check(chi_f, chi_l);
  CHECK(r.pass);
  CHECK_FALSE(r.residual.has_value());
  // a wrong partner fails
  auto chi_v = series_from_dims(dioperad_dims(corpus("frob"), N, DimsMethod::automatic), N);
  CHECK_FALSE(koszul_series_check(chi_f, chi_v).pass);
}

TEST_CASE("series bookkeeping") {
  std::map<std::pair<int, int>, QPoly> dims{{{1, 1}, QPoly(1)}, {{2, 1}, QPoly(3, 1)}};
  auto s = series_from_dims(dims, 4);
  CHECK(s.at(1, 1) == QPoly(1));
  CHECK(s.at(2, 1) == QPoly(Rational(3, 2), 1));
  CHECK(s.partial_x().at(1, 1) == QPoly(3, 1));
  CHECK(s.partial_y().at(2, 0) == QPoly(Rational(3, 2), 1));
  CHECK(s.homogeneous(2).coeffs().size() == 1);
}

}  // TEST_SUITE
