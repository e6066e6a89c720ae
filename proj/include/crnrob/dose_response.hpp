#pragma once

#include <Eigen/Dense>

#include <optional>
#include <vector>

#include "crnrob/steady_state.hpp"

namespace crnrob {

/// Strictly increasing positive lambda grid.
struct LambdaGrid {
  std::vector<double> values;

  static LambdaGrid geometric(double lo, double hi, int count);
};

/// Steady states along shifted initial conditions x0 + lambda * e_input;
/// one full state vector per grid point, so a single sweep serves every
/// output species.
struct SweepResult {
  int input_index = -1;
  Eigen::VectorXd base_x0;
  std::vector<double> lambdas;
  std::vector<SteadyState> states;
};

SweepResult sweep_serial(const SteadyStateProblem& prob, const Eigen::VectorXd& x0, int input_index,
                         const LambdaGrid& grid, const SolverOptions& opts = {});

/// OpenMP sweep over grid points. Each point's solve is independent and the
/// result is assembled by grid index, so output is bit-identical to
/// sweep_serial for any job count.
SweepResult sweep_parallel(const SteadyStateProblem& prob, const Eigen::VectorXd& x0, int input_index,
                           const LambdaGrid& grid, const SolverOptions& opts = {}, int jobs = 0);

struct DoseResponseCurve {
  int input_index = -1;
  int output_index = -1;
  Eigen::VectorXd base_x0;
  std::vector<double> lambdas;
  std::vector<double> values;
  std::vector<double> residuals;
  std::vector<bool> converged;

  int converged_count() const;
};

DoseResponseCurve curve_from_sweep(const SweepResult& sweep, int output_index);
DoseResponseCurve dose_response(const ReactionNetwork& net, const Eigen::VectorXd& x0, int input_index,
                                int output_index, const LambdaGrid& grid, const SolverOptions& opts = {},
                                int jobs = 1);

enum class VerdictKind { FinitePositiveLimit, DivergesToInfinity, DecaysToZero, Inconclusive };

struct EmpiricalVerdict {
  VerdictKind kind = VerdictKind::Inconclusive;
  std::optional<double> limit_estimate;
  double tail_slope = 0.0;  // fitted log-log slope over the tail window
};

struct VerdictOptions {
  double plateau_tol = 1e-3;  // relative change per decade for a plateau
  double zero_tol = 1e-7;
  double slope_tol = 0.2;
};

/// Tail classification of a dose-response curve: plateau, decay to zero,
/// power-law growth, or inconclusive. Needs >= 6 converged points spanning
/// >= 3 decades.
EmpiricalVerdict empirical_verdict(const DoseResponseCurve& curve, const VerdictOptions& opts = {});

const char* to_string(VerdictKind kind);

}  // namespace crnrob
