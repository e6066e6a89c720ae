#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "crnrob/rational.hpp"

namespace crnrob {

/// Exponent vector of a monomial; length equals the ring's variable count.
using ExpVec = std::vector<int>;

/// Graded lexicographic order (total degree first, then lex).
struct GrlexLess {
  bool operator()(const ExpVec& a, const ExpVec& b) const;
};

/// Sparse multivariate polynomial with exact rational coefficients.
/// Terms are kept in graded-lex order and zero coefficients are never stored,
/// so equal polynomials have identical representations.
class Poly {
 public:
  using TermMap = std::map<ExpVec, Rational, GrlexLess>;

  Poly() : nvars_(0) {}
  explicit Poly(int nvars) : nvars_(nvars) {}

  static Poly constant(int nvars, const Rational& c);
  static Poly variable(int nvars, int var, int power = 1);
  static Poly monomial(int nvars, const ExpVec& exps, const Rational& c);

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_value() const;  // requires is_constant()
  const TermMap& terms() const { return terms_; }

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator*(const Rational& c) const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  bool operator==(const Poly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  Poly pow(int e) const;

  int degree(int var) const;     // -1 for the zero polynomial
  int total_degree() const;      // -1 for the zero polynomial
  bool uses_var(int var) const;
  std::vector<int> used_vars() const;

  /// Dense coefficient list in `var`: result[k] is the coefficient of var^k
  /// (a polynomial in the remaining variables).
  std::vector<Poly> coefficients_in(int var) const;

  Poly derivative(int var) const;

  Poly eval_var(int var, const Rational& value) const;
  Rational eval(const std::vector<Rational>& point) const;
  double eval_double(const std::vector<double>& point) const;

  /// Substitutes var := num/den and clears denominators:
  /// returns sum_k c_k(rest) * num^k * den^(deg-k)  where deg = degree(var).
  Poly substituted(int var, const Poly& num, const Poly& den) const;

  /// Exact multivariate division; nullopt if `d` does not divide exactly.
  std::optional<Poly> divided_exactly(const Poly& d) const;

  /// Divides out the rational content and normalizes the sign so the
  /// graded-lex leading coefficient is positive. Zero stays zero.
  Poly primitive_part() const;
  Rational content() const;

  /// Componentwise minimum exponent over all terms (the largest monomial
  /// dividing every term). Empty polynomial yields all zeros.
  ExpVec monomial_content() const;
  Poly divided_by_monomial(const ExpVec& m) const;

  void add_term(const ExpVec& exps, const Rational& c);

  std::string to_string(const std::vector<std::string>& names) const;

 private:
  int nvars_;
  TermMap terms_;
};

inline Poly operator*(const Rational& c, const Poly& p) { return p * c; }

/// Resultant of f and g with respect to `var`, computed as the determinant of
/// the Sylvester matrix by fraction-free (Bareiss) elimination over the
/// polynomial ring. Zero if either polynomial is zero in `var`... callers
/// must check deg >= 1 on both sides.
Poly resultant(const Poly& f, const Poly& g, int var);

}  // namespace crnrob
