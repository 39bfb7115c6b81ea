#include "diop/rational.hpp"

#include <cctype>

namespace diop {

std::string to_string(const Rational& r) { return r.get_str(); }

std::string to_string(const Integer& z) { return z.get_str(); }

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw InputError("empty rational");
  size_t i = 0;
  if (s[0] == '+' || s[0] == '-') i = 1;
  bool seen_digit = false;
  bool seen_slash = false;
  bool digit_after_slash = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      seen_digit = true;
      if (seen_slash) digit_after_slash = true;
    } else if (c == '/' && !seen_slash && seen_digit) {
      seen_slash = true;
    } else {
      throw InputError("malformed rational '" + s + "'");
    }
  }
  if (!seen_digit || (seen_slash && !digit_after_slash)) throw InputError("malformed rational '" + s + "'");
  if (s[0] == '+') s.erase(0, 1);
  Rational r;
  if (r.set_str(s, 10) != 0) throw InputError("malformed rational '" + s + "'");
  if (r.get_den() == 0) throw InputError("zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

Integer factorial(unsigned n) {
  Integer z;
  mpz_fac_ui(z.get_mpz_t(), n);
  return z;
}

}  // namespace diop
