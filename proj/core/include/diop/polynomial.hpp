#pragma once

// Rational linear combinations of tree monomials of one arity signature.

#include <string>
#include <string_view>
#include <vector>

#include "diop/rational.hpp"
#include "diop/trees.hpp"

namespace diop {

struct Term {
  Rational coef;
  Monomial mono;

  bool operator==(const Term& o) const { return coef == o.coef && mono == o.mono; }
};

// Terms are kept merged, zero-free and sorted by monomial code.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(Monomial m, Rational c = 1);

  static Polynomial from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }
  Rational coefficient(const Monomial& m) const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  Polynomial operator-() const;
  bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }

 private:
  std::vector<Term> terms_;
};

// Merges repeats, drops zeros and sorts; throws InputError on mixed
// arity signatures.
Polynomial canonicalize_polynomial(const Alphabet& alpha, std::vector<Term> raw);

// POLY := [+|-] COEFF '*' TERM (('+'|'-') COEFF '*' TERM)*; "0" is the zero
// polynomial. The coefficient and '*' may be omitted ("a - b").
Polynomial parse_polynomial(const Alphabet& alpha, std::string_view text);
std::string format_polynomial(const Alphabet& alpha, const Polynomial& p);

// Substitutes each term of rhs for the divisor e of host.
Polynomial replace(const Alphabet& alpha, const Monomial& host, const Embedding& e, const Polynomial& rhs);

}  // namespace diop
