#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace diop {

using Rational = mpq_class;
using Integer = mpz_class;

// Thrown for malformed user input (files, terms, command-line values).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown when a computation would exceed a configured size guard.
class GuardExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string to_string(const Rational& r);
std::string to_string(const Integer& z);

// Accepts "p" or "p/q" with optional sign.
Rational parse_rational(std::string_view text);

Integer factorial(unsigned n);

}  // namespace diop
