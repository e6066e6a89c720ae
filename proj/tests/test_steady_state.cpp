#include <doctest.h>

#include <cmath>

#include "crnrob/dose_response.hpp"
#include "crnrob/steady_state.hpp"
#include "testutil.hpp"

using namespace crnrob;
using crnrob::test::load_fixture;

namespace {

// closed form for the modified loop with unit constants:
// x = (beta + gamma + alpha T - sqrt((alpha T - beta + gamma)^2 + 4 beta gamma)) / (2 alpha)
double modified_loop_xss(double alpha, double beta, double gamma, double T) {
  double disc = (alpha * T - beta + gamma) * (alpha * T - beta + gamma) + 4 * beta * gamma;
  return (beta + gamma + alpha * T - std::sqrt(disc)) / (2 * alpha);
}

}  // namespace

TEST_CASE("loop above threshold settles at (beta/alpha, T - beta/alpha)") {
  ReactionNetwork net = load_fixture("archetypal.crn");  // alpha=2, beta=1
  Eigen::VectorXd x0(2);
  x0 << 2.0, 1.0;  // T = 3 >= 1/2
  SteadyState ss = find_steady_state(net, x0, {});
  REQUIRE(ss.converged);
  CHECK(ss.x[0] == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(ss.x[1] == doctest::Approx(2.5).epsilon(1e-6));
}

TEST_CASE("loop below threshold hits the boundary state (T, 0)") {
  ReactionNetwork net = load_fixture("archetypal.crn");
  Eigen::VectorXd x0(2);
  x0 << 0.3, 0.1;  // T = 0.4 < 0.5
  SteadyState ss = find_steady_state(net, x0, {});
  REQUIRE(ss.converged);
  CHECK(ss.x[0] == doctest::Approx(0.4).epsilon(1e-6));
  CHECK(std::abs(ss.x[1]) < 1e-9);
}

TEST_CASE("modified loop matches its closed form across total concentrations") {
  ReactionNetwork net = load_fixture("archetypal_mod.crn");  // unit constants
  for (double T : {0.1, 1.0, 10.0, 100.0, 1e4, 1e6}) {
    Eigen::VectorXd x0(2);
    x0 << T / 2, T / 2;
    SteadyState ss = find_steady_state(net, x0, {});
    REQUIRE(ss.converged);
    double expect = modified_loop_xss(1, 1, 1, T);
    CHECK(ss.x[0] == doctest::Approx(expect).epsilon(1e-6));
  }
  // frozen spot value at T = 100
  Eigen::VectorXd x0(2);
  x0 << 50.0, 50.0;
  SteadyState ss = find_steady_state(net, x0, {});
  CHECK(ss.x[0] == doctest::Approx(0.990001).epsilon(1e-5));
}

TEST_CASE("converged states satisfy residual and conservation contracts") {
  for (const char* name : {"envz_ompr.crn", "envz_ompr_mod.crn", "futile_cycle.crn", "futile_cycle_mod.crn"}) {
    ReactionNetwork net = load_fixture(name);
    auto prob = SteadyStateProblem::build(net);
    Eigen::VectorXd x0 = Eigen::VectorXd::Ones(net.species_count());
    SteadyState ss = find_steady_state(prob, x0, {});
    REQUIRE(ss.converged);
    double scale = std::max(1.0, ss.x.lpNorm<Eigen::Infinity>());
    CHECK(ss.residual <= 4e-12 * scale);
    Eigen::VectorXd drift = prob.law_matrix * ss.x - ss.compat_totals;
    CHECK(drift.lpNorm<Eigen::Infinity>() <=
          1e-9 * std::max(1.0, ss.compat_totals.lpNorm<Eigen::Infinity>()));
  }
}

TEST_CASE("signaling response regulator settles at its robust value 2") {
  ReactionNetwork net = load_fixture("envz_ompr.crn");
  auto prob = SteadyStateProblem::build(net);
  int yp = *net.species_index("Yp");
  for (double xshift : {0.0, 1.0, 7.0}) {
    Eigen::VectorXd x0 = Eigen::VectorXd::Ones(7);
    x0[*net.species_index("X")] += xshift;
    SteadyState ss = find_steady_state(prob, x0, {});
    REQUIRE(ss.converged);
    CHECK(ss.x[yp] == doctest::Approx(2.0).epsilon(1e-8));
  }
}

TEST_CASE("well-definedness holds for the loop above threshold") {
  ReactionNetwork net = load_fixture("archetypal.crn");
  auto prob = SteadyStateProblem::build(net);
  Eigen::VectorXd x0(2);
  x0 << 2.0, 1.0;
  CHECK(check_well_defined(prob, x0, 0, 10.0, 5));
}

TEST_CASE("well-definedness holds for the futile cycle") {
  ReactionNetwork net = load_fixture("futile_cycle.crn");
  auto prob = SteadyStateProblem::build(net);
  Eigen::VectorXd x0 = Eigen::VectorXd::Ones(6);
  CHECK(check_well_defined(prob, x0, 0, 100.0, 5));
}

TEST_CASE("stiff shifted starts still converge") {
  ReactionNetwork net = load_fixture("envz_ompr.crn");
  auto prob = SteadyStateProblem::build(net);
  Eigen::VectorXd x0 = Eigen::VectorXd::Ones(7);
  x0[0] += 5e6;
  SteadyState ss = find_steady_state(prob, x0, {});
  REQUIRE(ss.converged);
  CHECK(ss.x[*net.species_index("Yp")] == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("dose response of the modified loop approaches 1 from below") {
  ReactionNetwork net = load_fixture("archetypal_mod.crn");
  Eigen::VectorXd x0(2);
  x0 << 1.0, 1.0;
  LambdaGrid grid = LambdaGrid::geometric(1.0, 1e4, 9);
  DoseResponseCurve curve = dose_response(net, x0, 0, 0, grid);
  REQUIRE(curve.converged_count() == 9);
  for (size_t k = 1; k < curve.values.size(); ++k) {
    CHECK(curve.values[k] > curve.values[k - 1]);  // increasing toward the limit
    CHECK(curve.values[k] < 1.0);
  }
  CHECK(curve.values.back() == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("empirical verdicts on synthetic curves") {
  DoseResponseCurve flat;
  flat.lambdas = {1, 10, 100, 1000, 1e4, 1e5, 1e6};
  flat.values = std::vector<double>(7, 2.0);
  flat.converged = std::vector<bool>(7, true);
  flat.residuals = std::vector<double>(7, 0.0);
  EmpiricalVerdict v = empirical_verdict(flat);
  CHECK(v.kind == VerdictKind::FinitePositiveLimit);
  CHECK(*v.limit_estimate == doctest::Approx(2.0));

  DoseResponseCurve identity = flat;
  identity.values = identity.lambdas;
  v = empirical_verdict(identity);
  CHECK(v.kind == VerdictKind::DivergesToInfinity);
  CHECK(v.tail_slope == doctest::Approx(1.0).epsilon(1e-6));

  DoseResponseCurve decay = flat;
  for (size_t k = 0; k < decay.values.size(); ++k) decay.values[k] = 1.0 / decay.lambdas[k];
  v = empirical_verdict(decay);
  CHECK(v.kind == VerdictKind::DecaysToZero);

  DoseResponseCurve sparse = flat;
  sparse.converged = {true, true, true, false, false, false, false};
  v = empirical_verdict(sparse);
  CHECK(v.kind == VerdictKind::Inconclusive);
}

TEST_CASE("phosphatase-side output decays when the regulator side is flooded") {
  ReactionNetwork net = load_fixture("envz_ompr.crn");
  Eigen::VectorXd x0 = Eigen::VectorXd::Ones(7);
  LambdaGrid grid = LambdaGrid::geometric(0.5, 5e5, 25);
  DoseResponseCurve curve =
      dose_response(net, x0, *net.species_index("Y"), *net.species_index("Xp"), grid);
  EmpiricalVerdict v = empirical_verdict(curve);
  CHECK(v.kind == VerdictKind::DecaysToZero);
}

TEST_CASE("parallel sweep is bit-identical to the serial reference") {
  ReactionNetwork net = load_fixture("futile_cycle.crn");
  auto prob = SteadyStateProblem::build(net);
  Eigen::VectorXd x0 = Eigen::VectorXd::Ones(6);
  LambdaGrid grid = LambdaGrid::geometric(0.1, 1e5, 24);
  SweepResult serial = sweep_serial(prob, x0, 0, grid, {});
  SweepResult parallel = sweep_parallel(prob, x0, 0, grid, {}, 0);
  REQUIRE(serial.states.size() == parallel.states.size());
  for (size_t k = 0; k < serial.states.size(); ++k) {
    CHECK(serial.states[k].converged == parallel.states[k].converged);
    CHECK(serial.states[k].x == parallel.states[k].x);  // exact bit equality
    CHECK(serial.states[k].residual == parallel.states[k].residual);
  }
}
