#pragma once

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

#include "crnrob/conservation.hpp"
#include "crnrob/network.hpp"

namespace crnrob {

struct SolverOptions {
  /// Integrate until the vector field max-norm falls below
  /// switch_tol * residual scale, then hand over to Newton.
  double switch_tol = 1e-6;
  /// Converged when ||rhs||_inf < final_tol * max(1, ||x||_inf).
  double final_tol = 1e-12;
  double initial_step = 1e-4;
  double max_step = 1e12;
  int max_steps = 200000;
  int newton_max_iters = 60;
  unsigned seed = 20240801;
};

struct SteadyState {
  Eigen::VectorXd x;
  double residual = 0.0;  // ||mass_action_rhs||_inf at x
  bool converged = false;
  Eigen::VectorXd compat_totals;  // conserved totals of the initial condition
  int steps = 0;
};

/// Precomputed reduction data shared by repeated solves on one network:
/// a row basis of the stoichiometric subspace plus the conservation laws,
/// forming the square Newton system.
struct SteadyStateProblem {
  const ReactionNetwork* net = nullptr;
  std::vector<ConservationLaw> laws;
  std::vector<int> independent_rows;  // species rows spanning the rhs image
  Eigen::MatrixXd law_matrix;         // m x d

  static SteadyStateProblem build(const ReactionNetwork& net);
  static SteadyStateProblem build(const ReactionNetwork& net, std::vector<ConservationLaw> laws);
};

/// Steady state from x0: stiff-safe implicit integration (adaptive backward
/// Euler with the analytic Jacobian) globalizes toward the attracting
/// equilibrium, then Newton on the reduced system {independent rhs rows} +
/// {conservation totals pinned to those of x0} polishes the residual.
/// Non-convergence is reported, never thrown; the best iterate is returned.
SteadyState find_steady_state(const SteadyStateProblem& prob, const Eigen::VectorXd& x0,
                              const SolverOptions& opts = {});
SteadyState find_steady_state(const ReactionNetwork& net, const Eigen::VectorXd& x0,
                              const SolverOptions& opts = {});

/// Samples n_starts random positive points in the compatibility class of
/// x0 + lambda_probe * e_input and accepts when every start converges to the
/// same steady state within 1e-6 relative.
bool check_well_defined(const SteadyStateProblem& prob, const Eigen::VectorXd& x0, int input_index,
                        double lambda_probe, int n_starts, const SolverOptions& opts = {},
                        std::string* warning = nullptr);

}  // namespace crnrob
