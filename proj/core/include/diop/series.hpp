#pragma once

// Truncated q-graded bivariate exponential generating series.

#include <map>
#include <optional>
#include <tuple>
#include <string>
#include <utility>

#include "diop/rational.hpp"

namespace diop {

// Polynomial in q with rational coefficients; exponents may be negative.
class QPoly {
 public:
  QPoly() = default;
  QPoly(Rational c, int e = 0);  // NOLINT

  const std::map<int, Rational>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  Rational at(int e) const;
  bool has_negative_coefficient() const;
  QPoly substitute_neg_q() const;  // q -> -q
  std::string str() const;

  QPoly& operator+=(const QPoly& o);
  QPoly& operator-=(const QPoly& o);
  friend QPoly operator+(QPoly a, const QPoly& b) { return a += b; }
  friend QPoly operator-(QPoly a, const QPoly& b) { return a -= b; }
  friend QPoly operator*(const QPoly& a, const QPoly& b);
  QPoly operator-() const;
  bool operator==(const QPoly& o) const { return c_ == o.c_; }

 private:
  std::map<int, Rational> c_;
};

// Sum of coeff(m,n) x^m y^n over m+n <= bound.
class Series {
 public:
  explicit Series(int bound = 0) : bound_(bound) {}

  int bound() const { return bound_; }
  const std::map<std::pair<int, int>, QPoly>& coeffs() const { return c_; }
  QPoly at(int m, int n) const;
  void add(int m, int n, const QPoly& v);
  bool is_zero() const { return c_.empty(); }

  static Series x(int bound);
  static Series y(int bound);
  static Series constant(int bound, const QPoly& c);

  Series& operator+=(const Series& o);
  Series& operator-=(const Series& o);
  friend Series operator+(Series a, const Series& b) { return a += b; }
  friend Series operator-(Series a, const Series& b) { return a -= b; }
  friend Series operator*(const Series& a, const Series& b);
  friend Series operator*(const QPoly& c, const Series& a);

  Series partial_x() const;
  Series partial_y() const;
  Series substitute_neg_q() const;
  Series truncate(int bound) const;
  // Terms of total degree d only.
  Series homogeneous(int d) const;
  std::string str() const;

 private:
  int bound_;
  std::map<std::pair<int, int>, QPoly> c_;
};

using SeriesPair = std::pair<Series, Series>;

// chi = sum dim_q(m,n) x^m y^n / (m! n!)
Series series_from_dims(const std::map<std::pair<int, int>, QPoly>& dims, int bound);

// F(G1, G2) for a series F; G must have zero constant terms.
Series compose(const Series& f, const SeriesPair& g);
SeriesPair compose_pair(const SeriesPair& f, const SeriesPair& g);

// Compositional inverse; throws InputError("singular linear part") unless
// the linear part has a nonzero constant determinant.
SeriesPair invert_pair(const SeriesPair& f);

struct KoszulCheck {
  bool pass = false;
  // first (component, m, n, residual) that differs from the identity map
  std::optional<std::tuple<int, int, int, QPoly>> residual;
};

// (d_y chi_dual(-q), d_x chi_dual(-q)) o (d_y chi_p, d_x chi_p) = (x, y)
// compared through total degree bound - 1.
KoszulCheck koszul_series_check(const Series& chi_p, const Series& chi_dual);

}  // namespace diop
