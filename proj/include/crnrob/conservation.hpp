#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "crnrob/network.hpp"
#include "crnrob/rational.hpp"

namespace crnrob {

/// A left-kernel vector of the stoichiometric matrix: coeffs . x(t) is
/// constant along every trajectory.
struct ConservationLaw {
  std::vector<Rational> coeffs;
  std::vector<int> support;   // indices with nonzero coefficient
  bool positive = false;      // all coefficients >= 0 (and not all zero)

  std::string to_string(const ReactionNetwork& net) const;
};

/// Basis of {c : c^T S = 0}, computed by exact rational elimination
/// (reduced row echelon form of S^T). Size = d - rank(S). Deterministic.
std::vector<ConservationLaw> kernel_basis(const StoichiometricMatrix& S);

/// Generating set of the extreme rays of kernel(S^T) intersected with the
/// nonnegative orthant, each normalized so its smallest nonzero coefficient
/// is 1. Empty when no nonzero nonnegative kernel vector exists.
std::vector<ConservationLaw> positive_laws(const std::vector<ConservationLaw>& basis);

/// Kernel basis that prefers positive laws: a maximal independent set of
/// extreme rays, completed with reduced-echelon kernel vectors. The totals
/// T_k used by the symbolic layer refer to this basis.
std::vector<ConservationLaw> canonical_law_basis(const StoichiometricMatrix& S);

std::vector<Rational> conserved_totals(const std::vector<ConservationLaw>& laws,
                                       const std::vector<Rational>& x0);
Eigen::VectorXd conserved_totals(const std::vector<ConservationLaw>& laws, const Eigen::VectorXd& x0);

int exact_rank(const StoichiometricMatrix& S);

}  // namespace crnrob
