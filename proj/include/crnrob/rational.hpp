#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace crnrob {

/// Exact rational scalar used throughout the symbolic layer.
using Rational = mpq_class;
using Integer = mpz_class;

double to_double(const Rational& q);

/// Parses "5", "-3/2", "0.125" or "2.5e-3" into an exact rational.
/// Decimal literals convert exactly by their digits (0.1 -> 1/10).
std::optional<Rational> parse_rational(const std::string& text);

/// Canonical text form: integers print bare, otherwise "num/den".
std::string to_string(const Rational& q);

/// gcd of two rationals (gcd of numerators over lcm of denominators);
/// gcd(0, x) = |x|.
Rational rational_gcd(const Rational& a, const Rational& b);

/// num/den in lowest terms. The two-argument mpq_class constructor does NOT
/// canonicalize; use this when numerator and denominator may share factors.
inline Rational make_fraction(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

int sign(const Rational& q);

}  // namespace crnrob
