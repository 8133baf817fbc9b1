#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace gtsing {

using Integer = mpz_class;
using Rational = mpq_class;

// "p/q" in lowest terms, or "p" when the denominator is one.
std::string to_string(const Rational& q);

// Accepts "p", "p/q", "-p/q" and "+p/q". Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

Rational power(const Rational& base, unsigned exponent);

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

}  // namespace gtsing
