#pragma once

#include <optional>
#include <string>
#include <vector>

#include "crnrob/polynomial.hpp"
#include "crnrob/rational.hpp"

namespace crnrob {

/// Dense univariate polynomial over the rationals; c[k] is the coefficient
/// of x^k. Trailing zeros are trimmed.
struct UPoly {
  std::vector<Rational> c;

  UPoly() = default;
  explicit UPoly(std::vector<Rational> coeffs);
  static UPoly from_poly(const Poly& p, int var);

  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  Rational eval(const Rational& x) const;
  double eval_double(double x) const;
  UPoly derivative() const;
  void trim();
  std::string to_string(const std::string& name = "x") const;
};

UPoly operator-(const UPoly& a, const UPoly& b);
UPoly operator*(const UPoly& a, const UPoly& b);

/// Remainder of a by b (b nonzero).
UPoly upoly_rem(const UPoly& a, const UPoly& b);
UPoly upoly_gcd(UPoly a, UPoly b);

/// One isolated real root: either an exact rational value or an open
/// isolating interval (lo, hi) containing exactly one root.
struct IsolatedRoot {
  bool exact = false;
  Rational value;     // meaningful when exact
  Rational lo, hi;    // isolating interval otherwise (also set when exact)
  double approx() const;
  std::string to_string() const;
};

/// Distinct nonnegative real roots of a univariate polynomial.
struct RootReport {
  std::vector<IsolatedRoot> nonneg_roots;
  bool has_zero_root = false;
  bool has_positive_root = false;
};

/// Sturm-based isolation of the distinct roots in [0, inf).
/// Rational roots are reported exactly; irrational roots as isolating
/// intervals refined below `width`.
RootReport analyze_roots(const UPoly& q, const Rational& width = Rational(1, 1000000000000L));

/// Number of distinct real roots of q in the open interval (a, b).
int sturm_count(const UPoly& q, const Rational& a, const Rational& b);

/// Number of distinct real roots in (a, +inf).
int sturm_count_above(const UPoly& q, const Rational& a);

/// The rational with smallest denominator (then smallest numerator) in
/// the closed interval [lo, hi]. Used to recover exact rational roots
/// from isolating intervals.
Rational simplest_rational_in(const Rational& lo, const Rational& hi);

}  // namespace crnrob
