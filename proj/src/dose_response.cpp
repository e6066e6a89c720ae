#include "crnrob/dose_response.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace crnrob {

LambdaGrid LambdaGrid::geometric(double lo, double hi, int count) {
  if (!(lo > 0) || !(hi > lo) || count < 2) throw std::invalid_argument("geometric grid needs 0 < lo < hi, count >= 2");
  LambdaGrid g;
  g.values.resize(count);
  double lr = std::log(lo), hr = std::log(hi);
  for (int k = 0; k < count; ++k) g.values[k] = std::exp(lr + (hr - lr) * k / (count - 1));
  g.values.front() = lo;
  g.values.back() = hi;
  return g;
}

namespace {

SteadyState solve_point(const SteadyStateProblem& prob, const Eigen::VectorXd& x0, int input_index,
                        double lambda, const SolverOptions& opts) {
  Eigen::VectorXd start = x0;
  start[input_index] += lambda;
  return find_steady_state(prob, start, opts);
}

}  // namespace

SweepResult sweep_serial(const SteadyStateProblem& prob, const Eigen::VectorXd& x0, int input_index,
                         const LambdaGrid& grid, const SolverOptions& opts) {
  SweepResult r;
  r.input_index = input_index;
  r.base_x0 = x0;
  r.lambdas = grid.values;
  r.states.resize(grid.values.size());
  for (size_t k = 0; k < grid.values.size(); ++k) {
    r.states[k] = solve_point(prob, x0, input_index, grid.values[k], opts);
  }
  return r;
}

SweepResult sweep_parallel(const SteadyStateProblem& prob, const Eigen::VectorXd& x0, int input_index,
                           const LambdaGrid& grid, const SolverOptions& opts, int jobs) {
  SweepResult r;
  r.input_index = input_index;
  r.base_x0 = x0;
  r.lambdas = grid.values;
  r.states.resize(grid.values.size());
  const int n = static_cast<int>(grid.values.size());
#ifdef _OPENMP
  if (jobs <= 0) jobs = omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
  for (int k = 0; k < n; ++k) {
    r.states[k] = solve_point(prob, x0, input_index, grid.values[k], opts);
  }
#else
  (void)jobs;
  for (int k = 0; k < n; ++k) r.states[k] = solve_point(prob, x0, input_index, grid.values[k], opts);
#endif
  return r;
}

int DoseResponseCurve::converged_count() const {
  return static_cast<int>(std::count(converged.begin(), converged.end(), true));
}

DoseResponseCurve curve_from_sweep(const SweepResult& sweep, int output_index) {
  DoseResponseCurve c;
  c.input_index = sweep.input_index;
  c.output_index = output_index;
  c.base_x0 = sweep.base_x0;
  c.lambdas = sweep.lambdas;
  c.values.reserve(sweep.states.size());
  for (const auto& s : sweep.states) {
    c.values.push_back(s.x.size() > output_index ? s.x[output_index] : 0.0);
    c.residuals.push_back(s.residual);
    c.converged.push_back(s.converged);
  }
  return c;
}

DoseResponseCurve dose_response(const ReactionNetwork& net, const Eigen::VectorXd& x0, int input_index,
                                int output_index, const LambdaGrid& grid, const SolverOptions& opts, int jobs) {
  SteadyStateProblem prob = SteadyStateProblem::build(net);
  SweepResult sweep = jobs == 1 ? sweep_serial(prob, x0, input_index, grid, opts)
                                : sweep_parallel(prob, x0, input_index, grid, opts, jobs);
  return curve_from_sweep(sweep, output_index);
}

EmpiricalVerdict empirical_verdict(const DoseResponseCurve& curve, const VerdictOptions& opts) {
  EmpiricalVerdict v;
  std::vector<std::pair<double, double>> pts;
  for (size_t k = 0; k < curve.values.size(); ++k) {
    if (curve.converged[k]) pts.push_back({curve.lambdas[k], curve.values[k]});
  }
  if (pts.size() < 6) return v;
  if (pts.back().first < 1000.0 * pts.front().first) return v;  // < 3 decades

  size_t window = std::max<size_t>(4, pts.size() / 5);
  size_t tail_start = pts.size() - window;
  double l0 = pts[tail_start].first, l1 = pts.back().first;
  double v0 = pts[tail_start].second, v1 = pts.back().second;
  double decades = std::log10(l1 / l0);
  if (decades <= 0) return v;

  // log-log slope over the tail (only meaningful for positive values)
  bool all_positive = true;
  for (size_t k = tail_start; k < pts.size(); ++k) all_positive = all_positive && pts[k].second > 0;
  double slope = 0.0;
  if (all_positive) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (size_t k = tail_start; k < pts.size(); ++k) {
      double lx = std::log10(pts[k].first), ly = std::log10(pts[k].second);
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
      ++n;
    }
    double denom = n * sxx - sx * sx;
    if (denom > 0) slope = (n * sxy - sx * sy) / denom;
  }
  v.tail_slope = slope;

  double tail = v1;
  double change_per_decade = std::abs(v1 - v0) / std::max(std::abs(v1), opts.zero_tol) / decades;
  double first = std::abs(pts.front().second);

  if (change_per_decade < opts.plateau_tol && tail > opts.zero_tol) {
    v.kind = VerdictKind::FinitePositiveLimit;
    v.limit_estimate = tail;
    return v;
  }
  bool below_floor = tail < opts.zero_tol && v1 <= v0;
  bool power_decay = all_positive && slope < -opts.slope_tol && tail < 1e-2 * std::max(first, opts.zero_tol);
  if (below_floor || power_decay) {
    v.kind = VerdictKind::DecaysToZero;
    v.limit_estimate = 0.0;
    return v;
  }
  if (all_positive && slope > opts.slope_tol && std::abs(v1) > 10.0 * std::max(first, opts.zero_tol)) {
    v.kind = VerdictKind::DivergesToInfinity;
    return v;
  }
  return v;
}

const char* to_string(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::FinitePositiveLimit: return "FinitePositiveLimit";
    case VerdictKind::DivergesToInfinity: return "DivergesToInfinity";
    case VerdictKind::DecaysToZero: return "DecaysToZero";
    case VerdictKind::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

}  // namespace crnrob
