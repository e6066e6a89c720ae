#include "crnrob/steady_state.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace crnrob {

namespace {

double residual_scale(const Eigen::VectorXd& x) { return std::max(1.0, x.lpNorm<Eigen::Infinity>()); }

double rhs_norm(const ReactionNetwork& net, const Eigen::VectorXd& x) {
  return mass_action_rhs(net, x).lpNorm<Eigen::Infinity>();
}

Eigen::VectorXd clamped(Eigen::VectorXd x) {
  for (long i = 0; i < x.size(); ++i)
    if (x[i] < 0) x[i] = 0;
  return x;
}

/// Newton on the square system {rhs rows in `independent_rows`} +
/// {law_matrix * x = totals}. Returns the polished point, or nullopt when
/// the iteration stalls or leaves the nonnegative orthant.
std::optional<Eigen::VectorXd> newton_polish(const SteadyStateProblem& prob, Eigen::VectorXd x,
                                             const Eigen::VectorXd& totals, const SolverOptions& opts) {
  const ReactionNetwork& net = *prob.net;
  const int d = net.species_count();
  const int s = static_cast<int>(prob.independent_rows.size());
  const int m = static_cast<int>(prob.laws.size());

  auto eval_f = [&](const Eigen::VectorXd& z) -> std::optional<Eigen::VectorXd> {
    for (long i = 0; i < z.size(); ++i)
      if (!(std::isfinite(z[i]))) return std::nullopt;
    Eigen::VectorXd rhs = mass_action_rhs(net, clamped(z));
    Eigen::VectorXd f(d);
    for (int k = 0; k < s; ++k) f[k] = rhs[prob.independent_rows[k]];
    f.segment(s, m) = prob.law_matrix * z - totals;
    return f;
  };

  auto f0 = eval_f(x);
  if (!f0) return std::nullopt;
  double fnorm = f0->lpNorm<Eigen::Infinity>();
  const double orthant_slack = 1e-9 * residual_scale(x);

  for (int iter = 0; iter < opts.newton_max_iters; ++iter) {
    Eigen::MatrixXd jac_full = mass_action_jacobian(net, clamped(x));
    Eigen::MatrixXd J(d, d);
    for (int k = 0; k < s; ++k) J.row(k) = jac_full.row(prob.independent_rows[k]);
    J.block(s, 0, m, d) = prob.law_matrix;

    Eigen::VectorXd step = J.partialPivLu().solve(-*f0);
    if (!step.allFinite()) return std::nullopt;

    double t = 1.0;
    bool accepted = false;
    for (int bt = 0; bt < 40; ++bt) {
      Eigen::VectorXd cand = x + t * step;
      if (cand.minCoeff() < -orthant_slack) {
        t *= 0.5;
        continue;
      }
      auto fc = eval_f(cand);
      if (fc) {
        double cnorm = fc->lpNorm<Eigen::Infinity>();
        if (cnorm < fnorm || cnorm < opts.final_tol * residual_scale(cand)) {
          x = std::move(cand);
          f0 = std::move(fc);
          fnorm = cnorm;
          accepted = true;
          break;
        }
      }
      t *= 0.5;
    }
    if (!accepted) break;
    if (fnorm <= opts.final_tol * residual_scale(x)) break;
  }

  if (x.minCoeff() < -orthant_slack) return std::nullopt;
  return clamped(x);
}

/// One adaptive backward-Euler step; updates x and h in place.
/// Returns false when the step size underflows.
bool backward_euler_step(const SteadyStateProblem& prob, Eigen::VectorXd& x, double& h,
                         const SolverOptions& opts) {
  const ReactionNetwork& net = *prob.net;
  const int d = net.species_count();
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(d, d);

  for (int attempt = 0; attempt < 60; ++attempt) {
    Eigen::VectorXd z = x;
    bool ok = false;
    for (int it = 0; it < 12; ++it) {
      Eigen::VectorXd g = z - x - h * mass_action_rhs(net, clamped(z));
      double gnorm = g.lpNorm<Eigen::Infinity>();
      double zscale = residual_scale(z);
      if (gnorm <= 1e-10 * zscale) {
        ok = true;
        break;
      }
      Eigen::MatrixXd J = eye - h * mass_action_jacobian(net, clamped(z));
      Eigen::VectorXd delta = J.partialPivLu().solve(-g);
      if (!delta.allFinite()) break;
      z += delta;
      if (z.minCoeff() < -0.1 * zscale) break;  // wildly negative, shrink h
      if (delta.lpNorm<Eigen::Infinity>() <= 1e-12 * zscale) {
        ok = true;
        break;
      }
    }
    if (ok && z.allFinite() && z.minCoeff() > -1e-8 * residual_scale(z)) {
      x = clamped(z);
      h = std::min(h * 1.8, opts.max_step);
      return true;
    }
    h *= 0.25;
    if (h < 1e-300) return false;
  }
  return false;
}

}  // namespace

SteadyStateProblem SteadyStateProblem::build(const ReactionNetwork& net) {
  return build(net, canonical_law_basis(stoichiometric_matrix(net)));
}

SteadyStateProblem SteadyStateProblem::build(const ReactionNetwork& net, std::vector<ConservationLaw> laws) {
  SteadyStateProblem prob;
  prob.net = &net;
  prob.laws = std::move(laws);
  const int d = net.species_count();
  const int m = static_cast<int>(prob.laws.size());

  // Greedy exact selection of species rows spanning the row space of the
  // stoichiometric matrix (first independent rows in species order).
  StoichiometricMatrix S = stoichiometric_matrix(net);
  std::vector<std::vector<Rational>> work;  // rows kept so far, reduced
  auto try_add = [&](int row) {
    std::vector<Rational> v(S.cols);
    for (int j = 0; j < S.cols; ++j) v[j] = Rational(S.columns[j][row]);
    for (const auto& w : work) {
      // eliminate leading entry of w from v
      int lead = -1;
      for (int j = 0; j < S.cols; ++j)
        if (w[j] != 0) {
          lead = j;
          break;
        }
      if (lead >= 0 && v[lead] != 0) {
        Rational f = v[lead] / w[lead];
        for (int j = 0; j < S.cols; ++j) v[j] -= f * w[j];
      }
    }
    for (int j = 0; j < S.cols; ++j) {
      if (v[j] != 0) {
        work.push_back(std::move(v));
        return true;
      }
    }
    return false;
  };
  for (int row = 0; row < d && static_cast<int>(prob.independent_rows.size()) < d - m; ++row) {
    if (try_add(row)) prob.independent_rows.push_back(row);
  }

  prob.law_matrix.resize(m, d);
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < d; ++i) prob.law_matrix(k, i) = to_double(prob.laws[k].coeffs[i]);
  return prob;
}

SteadyState find_steady_state(const SteadyStateProblem& prob, const Eigen::VectorXd& x0,
                              const SolverOptions& opts) {
  const ReactionNetwork& net = *prob.net;
  SteadyState result;
  result.compat_totals = prob.law_matrix * x0;

  Eigen::VectorXd x = clamped(x0);
  double h = opts.initial_step;
  int steps = 0;

  auto finished = [&](const Eigen::VectorXd& z) {
    return rhs_norm(net, z) <= opts.final_tol * residual_scale(z);
  };
  // Newton alone can converge to boundary or unstable roots; integration
  // first localizes the attracting equilibrium, so polishing is attempted
  // only once the vector field is already small.
  auto try_polish = [&](const Eigen::VectorXd& z) -> bool {
    if (finished(z)) return true;
    if (rhs_norm(net, z) > opts.switch_tol * residual_scale(z)) return false;
    auto polished = newton_polish(prob, z, result.compat_totals, opts);
    if (polished && finished(*polished)) {
      x = *polished;
      return true;
    }
    return false;
  };

  bool done = try_polish(x);
  while (!done && steps < opts.max_steps) {
    if (!backward_euler_step(prob, x, h, opts)) break;
    ++steps;
    done = try_polish(x);
  }

  result.x = clamped(x);
  result.residual = rhs_norm(net, result.x);
  result.converged = done && result.residual <= opts.final_tol * residual_scale(result.x) * 4;
  result.steps = steps;
  return result;
}

SteadyState find_steady_state(const ReactionNetwork& net, const Eigen::VectorXd& x0,
                              const SolverOptions& opts) {
  return find_steady_state(SteadyStateProblem::build(net), x0, opts);
}

bool check_well_defined(const SteadyStateProblem& prob, const Eigen::VectorXd& x0, int input_index,
                        double lambda_probe, int n_starts, const SolverOptions& opts, std::string* warning) {
  const ReactionNetwork& net = *prob.net;
  const int d = net.species_count();
  if (n_starts < 2) n_starts = 2;

  Eigen::VectorXd base = x0;
  base[input_index] += lambda_probe;

  // basis of the stoichiometric subspace for in-class perturbations
  StoichiometricMatrix S = stoichiometric_matrix(net);
  Eigen::MatrixXd Sm(d, S.cols);
  for (int j = 0; j < S.cols; ++j)
    for (int i = 0; i < d; ++i) Sm(i, j) = S.columns[j][i];
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(Sm);
  int rank = static_cast<int>(qr.rank());
  Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(d, rank);

  std::vector<Eigen::VectorXd> states;
  for (int start = 0; start < n_starts; ++start) {
    Eigen::VectorXd z = base;
    if (start > 0) {
      std::mt19937 rng(opts.seed + static_cast<unsigned>(start));
      std::normal_distribution<double> gauss(0.0, 1.0);
      Eigen::VectorXd eta(rank);
      for (int k = 0; k < rank; ++k) eta[k] = gauss(rng);
      double sigma = 0.25 * base.maxCoeff();
      for (int shrink = 0; shrink < 60; ++shrink) {
        Eigen::VectorXd cand = base + sigma * (Q * eta);
        if (cand.minCoeff() > 1e-9 * residual_scale(base)) {
          z = cand;
          break;
        }
        sigma *= 0.5;
      }
    }
    SteadyState ss = find_steady_state(prob, z, opts);
    if (!ss.converged) {
      if (warning) *warning = "start " + std::to_string(start) + " did not converge";
      return false;
    }
    states.push_back(ss.x);
  }

  for (size_t i = 1; i < states.size(); ++i) {
    for (int k = 0; k < d; ++k) {
      double diff = std::abs(states[i][k] - states[0][k]);
      double scale = std::max({1.0, std::abs(states[i][k]), std::abs(states[0][k])});
      if (diff > 1e-6 * scale) {
        if (warning)
          *warning = "starts disagree on " + net.species_name(k) + " (" + std::to_string(states[0][k]) +
                     " vs " + std::to_string(states[i][k]) + ")";
        return false;
      }
    }
  }
  return true;
}

}  // namespace crnrob
