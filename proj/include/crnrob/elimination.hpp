#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "crnrob/conservation.hpp"
#include "crnrob/dose_response.hpp"
#include "crnrob/network.hpp"
#include "crnrob/polynomial.hpp"
#include "crnrob/roots.hpp"

namespace crnrob {

/// Polynomial ring shared by the symbolic layer: one variable per species,
/// one per conserved total, plus a trailing lambda variable used after
/// specializing the input shift.
struct SymbolicSystem {
  const ReactionNetwork* net = nullptr;
  std::vector<ConservationLaw> laws;      // kernel basis, defines T_1..T_m
  std::vector<ConservationLaw> positive;  // extreme rays of the nonneg kernel cone

  int nspecies = 0;
  int nlaws = 0;

  int nvars() const { return nspecies + nlaws + 1; }
  int species_var(int i) const { return i; }
  int total_var(int k) const { return nspecies + k; }
  int lambda_var() const { return nspecies + nlaws; }
  std::vector<std::string> var_names() const;

  static SymbolicSystem build(const ReactionNetwork& net);
};

/// The d steady-state polynomials f_k(X_1..X_d) with exact rational
/// coefficients, in the system ring.
std::vector<Poly> steady_state_equations(const SymbolicSystem& sys);

/// Conservation constraints sum_i a_i X_i - T_k, one per basis law.
std::vector<Poly> law_equations(const SymbolicSystem& sys);

/// Rational function num/den over the system ring.
struct RatExpr {
  Poly num, den;

  RatExpr() = default;
  RatExpr(Poly n, Poly d) : num(std::move(n)), den(std::move(d)) {}
  bool is_constant() const { return num.is_constant() && den.is_constant(); }
  Rational constant_value() const { return num.constant_value() / den.constant_value(); }
  RatExpr simplified() const;
  RatExpr substituted(int var, const Poly& num, const Poly& den) const;
  std::string to_string(const std::vector<std::string>& names) const;
};

/// One component of the steady-state variety, produced by triangular
/// solving with branching on monomial factors (boundary components pin
/// species to zero).
struct VarietyComponent {
  std::map<int, RatExpr> solved;  // species var -> expression in free vars and totals
  std::vector<int> zero_species;
  std::vector<int> free_species;
  std::vector<Poly> constraints;  // residual equations
  bool boundary = false;
  std::vector<std::string> notes;
};

struct DecomposeOptions {
  std::optional<int> keep_free;  // species index never solved for
  int max_components = 32;
  bool use_laws = true;
};

/// Triangularizes the steady-state system (plus conservation constraints)
/// by exact linear-in-one-variable substitutions, splitting off boundary
/// components when a species monomial factors out of an equation.
std::vector<VarietyComponent> decompose_steady_variety(const SymbolicSystem& sys,
                                                       const DecomposeOptions& opts = {});

/// How well a component describes a concrete state; used to pick the
/// component the attracting equilibrium lives on. Smaller is better.
double component_residual(const SymbolicSystem& sys, const VarietyComponent& comp,
                          const Eigen::VectorXd& x, const Eigen::VectorXd& totals);

/// Projection of a component to (X_j, T_1..T_m): a single nonzero
/// polynomial vanishing on the component, with per-species expressions in
/// terms of X_j kept alongside when the elimination stayed linear.
struct OutputElimination {
  int output = -1;
  Poly projection;                 // in (species_var(output), totals)
  std::map<int, RatExpr> solved;   // species var -> expr in (output, totals)
  std::vector<int> zero_species;
  bool exprs_available = false;
  bool used_resultants = false;
  bool boundary = false;
  std::vector<std::string> notes;
};

std::optional<OutputElimination> eliminate_to_univariate(const SymbolicSystem& sys,
                                                         const VarietyComponent& comp, int output);

/// P(x, lambda) after substituting T_k <- C_k + alpha_i^(k) * lambda,
/// decomposed as lambda^m * q(x) + lower order terms.
struct SpecializedElim {
  int output = -1;
  int input = -1;
  Poly specialized;  // in (species_var(output), lambda)
  int lambda_degree = 0;
  UPoly leading;  // q(x), the lambda^m coefficient
  bool lambda_dependent = false;
  std::vector<Rational> base_totals;
  std::vector<Rational> shift;  // alpha_i per basis law

  /// |P(value, lambda)| / max |monomial|, evaluated in doubles.
  double relative_residual(double value, double lambda) const;
};

/// Throws std::runtime_error when the projection vanishes identically after
/// specialization (spurious elimination output).
SpecializedElim specialize_input(const SymbolicSystem& sys, const Poly& projection, int output,
                                 int input, const std::vector<Rational>& base_totals);

/// Limit of a quantity as lambda -> infinity.
struct Limit {
  enum Kind { Finite, PlusInfinity, MinusInfinity, UnsignedInfinity, Unknown } kind = Unknown;
  Rational value;  // meaningful for Finite

  static Limit finite(Rational v) { return {Finite, std::move(v)}; }
  static Limit plus_infinity() { return {PlusInfinity, Rational(0)}; }
  std::string to_string() const;
};

/// Evaluates each solved species' limit from known limits of the free
/// species by degree comparison; indeterminate forms yield Unknown.
/// Shifted totals (laws whose coefficient on `input` is nonzero) diverge
/// with lambda; unshifted totals take their base values.
std::map<int, Limit> propagate_limits(const SymbolicSystem& sys, const VarietyComponent& comp,
                                      const std::map<int, Limit>& known, int input,
                                      const std::vector<Rational>& base_totals);

enum class CertKind {
  EventuallyConstant,  // exact ACR: dose-response constant for large lambda
  ExactLimit,          // finite positive limit, certified
  Zero,
  Infinity,
  Ambiguous,
  Unsupported,
  Inconsistent
};

struct LimitCandidate {
  bool infinity = false;
  IsolatedRoot root;  // finite candidate when !infinity
  std::string to_string() const;
};

struct LimitCertificate {
  CertKind kind = CertKind::Unsupported;
  std::optional<IsolatedRoot> limit;
  std::vector<LimitCandidate> candidates;  // survivors, for Ambiguous
  RootReport roots;
  std::vector<std::string> notes;
};

/// Decision procedure combining the root analysis of q, the positive-law
/// finiteness guarantee, growth analysis of P at infinity, and exact
/// nonnegativity side constraints propagated through the parametrization.
LimitCertificate certified_limit(const SymbolicSystem& sys, const OutputElimination& elim,
                                 const SpecializedElim& spec);

const char* to_string(CertKind kind);

}  // namespace crnrob
