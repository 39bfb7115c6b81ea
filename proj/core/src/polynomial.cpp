#include "diop/polynomial.hpp"

#include <algorithm>
#include <cctype>

namespace diop {

Polynomial::Polynomial(Monomial m, Rational c) {
  if (c != 0) terms_.push_back({std::move(c), std::move(m)});
}

Polynomial Polynomial::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.mono < b.mono; });
  Polynomial p;
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coef += t.coef;
    } else {
      p.terms_.push_back(std::move(t));
    }
  }
  std::erase_if(p.terms_, [](const Term& t) { return t.coef == 0; });
  return p;
}

Rational Polynomial::coefficient(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m, [](const Term& t, const Monomial& x) { return t.mono < x; });
  if (it != terms_.end() && it->mono == m) return it->coef;
  return 0;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() || (i < terms_.size() && terms_[i].mono < o.terms_[j].mono)) {
      out.push_back(std::move(terms_[i++]));
    } else if (i == terms_.size() || o.terms_[j].mono < terms_[i].mono) {
      out.push_back(o.terms_[j++]);
    } else {
      Rational c = terms_[i].coef + o.terms_[j].coef;
      if (c != 0) out.push_back({c, std::move(terms_[i].mono)});
      ++i;
      ++j;
    }
  }
  terms_ = std::move(out);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) { return *this += -o; }

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coef *= c;
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial p = *this;
  for (auto& t : p.terms_) t.coef = -t.coef;
  return p;
}

Polynomial canonicalize_polynomial(const Alphabet& alpha, std::vector<Term> raw) {
  if (!raw.empty()) {
    Signature s0 = signature(alpha, raw.front().mono);
    for (const auto& t : raw)
      if (signature(alpha, t.mono) != s0)
        throw InputError("mixed arity signatures in polynomial: " + s0.str() + " and " + signature(alpha, t.mono).str());
  }
  return Polynomial::from_terms(std::move(raw));
}

namespace {

size_t skip_ws(std::string_view s, size_t i) {
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  return i;
}

// End of the term starting at i: identifier plus balanced parentheses, or an integer.
size_t term_end(std::string_view s, size_t i) {
  if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    return i;
  }
  while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_' || s[i] == '\'')) ++i;
  i = skip_ws(s, i);
  if (i >= s.size() || s[i] != '(') return i;
  int depth = 0;
  for (; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')' && --depth == 0) return i + 1;
  }
  throw InputError("unbalanced parentheses in '" + std::string(s) + "'");
}

}  // namespace

Polynomial parse_polynomial(const Alphabet& alpha, std::string_view text) {
  std::vector<Term> raw;
  size_t i = skip_ws(text, 0);
  if (i < text.size() && text[i] == '0' && skip_ws(text, i + 1) == text.size()) return {};
  bool first = true;
  while (true) {
    i = skip_ws(text, i);
    if (i >= text.size()) {
      if (first) throw InputError("empty polynomial");
      break;
    }
    int sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      if (text[i] == '-') sign = -1;
      i = skip_ws(text, i + 1);
    } else if (!first) {
      throw InputError("expected '+' or '-' at column " + std::to_string(i + 1) + " in '" + std::string(text) + "'");
    }
    first = false;
    Rational coef = 1;
    // coefficient present iff a '*' follows a numeric token
    size_t j = i;
    while (j < text.size() && (std::isdigit(static_cast<unsigned char>(text[j])) || text[j] == '/')) ++j;
    size_t k = skip_ws(text, j);
    if (j > i && k < text.size() && text[k] == '*') {
      coef = parse_rational(text.substr(i, j - i));
      i = skip_ws(text, k + 1);
    }
    size_t e = term_end(text, i);
    if (e == i) throw InputError("expected term at column " + std::to_string(i + 1) + " in '" + std::string(text) + "'");
    Monomial m = parse_term(alpha, text.substr(i, e - i));
    raw.push_back({sign * coef, std::move(m)});
    i = e;
  }
  return canonicalize_polynomial(alpha, std::move(raw));
}

std::string format_polynomial(const Alphabet& alpha, const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : p.terms()) {
    Rational c = t.coef;
    if (c < 0) {
      out += first ? "-" : " - ";
      c = -c;
    } else if (!first) {
      out += " + ";
    }
    if (c != 1) out += to_string(c) + "*";
    out += format_term(alpha, t.mono);
    first = false;
  }
  return out;
}

Polynomial replace(const Alphabet& alpha, const Monomial& host, const Embedding& e, const Polynomial& rhs) {
  TreeView hv(alpha, host);
  if (!rhs.is_zero()) {
    Monomial pat = extract_divisor(alpha, hv, e);
    if (signature(alpha, pat) != signature(alpha, rhs.terms().front().mono))
      throw InputError("replace: signature mismatch between divisor and replacement");
  }
  std::vector<Term> out;
  out.reserve(rhs.size());
  for (const auto& t : rhs.terms()) out.push_back({t.coef, graft_replacement(hv, e, t.mono)});
  return Polynomial::from_terms(std::move(out));
}

}  // namespace diop
