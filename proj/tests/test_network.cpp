#include <doctest.h>

#include <random>

#include "crnrob/conservation.hpp"
#include "crnrob/network.hpp"
#include "testutil.hpp"

using namespace crnrob;
using crnrob::test::load_fixture;

namespace {

Eigen::MatrixXd fd_jacobian(const ReactionNetwork& net, const Eigen::VectorXd& x) {
  const int d = net.species_count();
  Eigen::MatrixXd jac(d, d);
  for (int k = 0; k < d; ++k) {
    double h = 1e-6 * (1.0 + std::abs(x[k]));
    Eigen::VectorXd xp = x, xm = x;
    xp[k] += h;
    xm[k] = std::max(0.0, xm[k] - h);
    double span = xp[k] - xm[k];
    jac.col(k) = (mass_action_rhs(net, xp) - mass_action_rhs(net, xm)) / span;
  }
  return jac;
}

}  // namespace

TEST_CASE("stoichiometric matrix of the two-species loop") {
  ReactionNetwork net = load_fixture("archetypal.crn");
  StoichiometricMatrix S = stoichiometric_matrix(net);
  REQUIRE(S.rows == 2);
  REQUIRE(S.cols == 2);
  CHECK(S.columns[0] == std::vector<int>{-1, 1});
  CHECK(S.columns[1] == std::vector<int>{1, -1});
}

TEST_CASE("stoichiometric matrix single edge") {
  ReactionNetwork net(
      {{"A", 0}, {"B", 1}},
      {{Complex{{1, 0}}, Complex{{0, 1}}, {Rational(1), std::nullopt}}});
  StoichiometricMatrix S = stoichiometric_matrix(net);
  REQUIRE(S.cols == 1);
  CHECK(S.columns[0] == std::vector<int>{-1, 1});
}

TEST_CASE("signaling network has a 7x9 matrix of rank 5") {
  ReactionNetwork net = load_fixture("envz_ompr.crn");
  StoichiometricMatrix S = stoichiometric_matrix(net);
  REQUIRE(S.rows == 7);
  REQUIRE(S.cols == 9);
  // independent oracle: integer fraction-free elimination on the raw entries
  std::vector<std::vector<long>> m(S.rows, std::vector<long>(S.cols));
  for (int i = 0; i < S.rows; ++i)
    for (int j = 0; j < S.cols; ++j) m[i][j] = S.columns[j][i];
  CHECK(crnrob::test::integer_matrix_rank(m) == 5);
  CHECK(exact_rank(S) == 5);
}

TEST_CASE("mass-action vector field on the loop") {
  ReactionNetwork net = load_fixture("archetypal.crn");
  Eigen::VectorXd x(2);
  x << 1.0, 1.0;
  Eigen::VectorXd rhs = mass_action_rhs(net, x);
  CHECK(rhs[0] == doctest::Approx(-1.0));
  CHECK(rhs[1] == doctest::Approx(1.0));
}

TEST_CASE("mass-action vector field on the modified loop") {
  ReactionNetwork net = load_fixture("archetypal_mod.crn");
  Eigen::VectorXd x(2);
  x << 1.0, 1.0;
  Eigen::VectorXd rhs = mass_action_rhs(net, x);
  CHECK(rhs[0] == doctest::Approx(-1.0));
  CHECK(rhs[1] == doctest::Approx(1.0));
}

TEST_CASE("vector field vanishes when all reactant species are absent") {
  ReactionNetwork net = load_fixture("futile_cycle.crn");
  Eigen::VectorXd x = Eigen::VectorXd::Zero(net.species_count());
  CHECK(mass_action_rhs(net, x).lpNorm<Eigen::Infinity>() == 0.0);
}

TEST_CASE("negative concentrations are a domain error") {
  ReactionNetwork net = load_fixture("archetypal.crn");
  Eigen::VectorXd x(2);
  x << -0.5, 1.0;
  CHECK_THROWS_AS(mass_action_rhs(net, x), std::domain_error);
}

TEST_CASE("analytic jacobian of the loop at (1,1)") {
  ReactionNetwork net = load_fixture("archetypal.crn");
  Eigen::VectorXd x(2);
  x << 1.0, 1.0;
  Eigen::MatrixXd jac = mass_action_jacobian(net, x);
  CHECK(jac(0, 0) == doctest::Approx(-2.0));
  CHECK(jac(0, 1) == doctest::Approx(-1.0));
  CHECK(jac(1, 0) == doctest::Approx(2.0));
  CHECK(jac(1, 1) == doctest::Approx(1.0));
}

TEST_CASE("jacobian matches central finite differences at random points") {
  std::mt19937 rng(777);
  std::uniform_real_distribution<double> u(0.1, 3.0);
  for (const char* name : {"archetypal_mod.crn", "envz_ompr.crn", "futile_cycle.crn"}) {
    ReactionNetwork net = load_fixture(name);
    for (int trial = 0; trial < 10; ++trial) {
      Eigen::VectorXd x(net.species_count());
      for (int i = 0; i < x.size(); ++i) x[i] = u(rng);
      Eigen::MatrixXd a = mass_action_jacobian(net, x);
      Eigen::MatrixXd b = fd_jacobian(net, x);
      double scale = std::max(1.0, a.lpNorm<Eigen::Infinity>());
      CHECK((a - b).lpNorm<Eigen::Infinity>() / scale < 1e-6);
    }
  }
}

TEST_CASE("conservation laws annihilate the vector field exactly") {
  std::mt19937 rng(20240809);
  std::uniform_int_distribution<int> num(1, 9);
  int networks = 0;
  while (networks < 200) {
    ReactionNetwork net = crnrob::test::random_conservative_network(rng);
    auto laws = kernel_basis(stoichiometric_matrix(net));
    if (laws.empty()) continue;
    ++networks;
    std::vector<Rational> x;
    for (int i = 0; i < net.species_count(); ++i) x.push_back(make_fraction(num(rng), num(rng)));
    std::vector<Rational> rhs = mass_action_rhs(net, x);
    for (const auto& law : laws) {
      Rational dot = 0;
      for (size_t i = 0; i < rhs.size(); ++i) dot += law.coeffs[i] * rhs[i];
      CHECK(dot == 0);  // exact in rational arithmetic
    }
  }
}

TEST_CASE("rational evaluation path is exact") {
  ReactionNetwork net = load_fixture("archetypal.crn");  // alpha=2, beta=1
  std::vector<Rational> x{Rational(1, 3), Rational(2, 5)};
  // dX = -2 x y + y, dY = 2 x y - y
  Rational xy = x[0] * x[1];
  std::vector<Rational> rhs = mass_action_rhs(net, x);
  CHECK(rhs[0] == -2 * xy + x[1]);
  CHECK(rhs[1] == 2 * xy - x[1]);
}

TEST_CASE("network validation rejects malformed inputs") {
  std::vector<Species> sp{{"A", 0}, {"B", 1}};
  Complex a{{1, 0}}, b{{0, 1}};
  CHECK_THROWS_AS(ReactionNetwork(sp, {{a, a, {Rational(1), std::nullopt}}}), NetworkError);
  CHECK_THROWS_AS(ReactionNetwork(sp, {{a, b, {Rational(-1), std::nullopt}}}), NetworkError);
  CHECK_THROWS_AS(ReactionNetwork(sp,
                                  {{a, b, {Rational(1), std::nullopt}},
                                   {a, b, {Rational(2), std::nullopt}}}),
                  NetworkError);
  CHECK_THROWS_AS(ReactionNetwork({{"A", 0}, {"A", 1}}, {}), NetworkError);
  CHECK_THROWS_AS(ReactionNetwork(sp, {{a, b, {Rational(1), std::string("k")}}}), NetworkError);
}

TEST_CASE("adding a reaction produces a new network value") {
  ReactionNetwork net = load_fixture("archetypal.crn");
  Complex x{{1, 0}}, y{{0, 1}};
  ReactionNetwork bigger = net.with_reaction({x, y, {Rational(1), std::nullopt}});
  CHECK(net.reaction_count() == 2);
  CHECK(bigger.reaction_count() == 3);
}
