#include <doctest.h>

#include <random>

#include "crnrob/conservation.hpp"
#include "crnrob/steady_state.hpp"
#include "testutil.hpp"

using namespace crnrob;
using crnrob::test::load_fixture;

namespace {

std::vector<int> support_names_to_indices(const ReactionNetwork& net, std::initializer_list<const char*> names) {
  std::vector<int> idx;
  for (const char* n : names) idx.push_back(*net.species_index(n));
  std::sort(idx.begin(), idx.end());
  return idx;
}

}  // namespace

TEST_CASE("two-species loop conserves the total") {
  ReactionNetwork net = load_fixture("archetypal.crn");
  auto basis = kernel_basis(stoichiometric_matrix(net));
  REQUIRE(basis.size() == 1);
  // [1, 1] up to scaling
  CHECK(basis[0].coeffs[0] == basis[0].coeffs[1]);
  CHECK(basis[0].coeffs[0] != 0);
  CHECK(basis[0].positive);
}

TEST_CASE("signaling network has the two positive totals") {
  ReactionNetwork net = load_fixture("envz_ompr.crn");
  auto basis = kernel_basis(stoichiometric_matrix(net));
  REQUIRE(basis.size() == 2);
  auto rays = positive_laws(basis);
  REQUIRE(rays.size() == 2);
  std::vector<std::vector<int>> supports{rays[0].support, rays[1].support};
  std::sort(supports.begin(), supports.end());
  std::vector<std::vector<int>> expected{
      support_names_to_indices(net, {"X", "XT", "Xp", "XpY", "XTYp"}),
      support_names_to_indices(net, {"Y", "Yp", "XpY", "XTYp"})};
  std::sort(expected.begin(), expected.end());
  CHECK(supports == expected);
}

TEST_CASE("futile cycle has three positive laws with the expected supports") {
  ReactionNetwork net = load_fixture("futile_cycle.crn");
  auto basis = kernel_basis(stoichiometric_matrix(net));
  REQUIRE(basis.size() == 3);
  auto rays = positive_laws(basis);
  REQUIRE(rays.size() == 3);
  std::vector<std::vector<int>> supports;
  for (const auto& r : rays) supports.push_back(r.support);
  std::sort(supports.begin(), supports.end());
  std::vector<std::vector<int>> expected{
      support_names_to_indices(net, {"S", "P", "SE", "PF"}),
      support_names_to_indices(net, {"E", "SE"}),
      support_names_to_indices(net, {"F", "PF"})};
  std::sort(expected.begin(), expected.end());
  CHECK(supports == expected);
}

TEST_CASE("a signed kernel vector yields no positive law") {
  // 0 -> A + B produces the pair together: A - B is conserved but no
  // nonnegative combination is
  ReactionNetwork net(
      {{"A", 0}, {"B", 1}},
      {{Complex{{0, 0}}, Complex{{1, 1}}, {Rational(1), std::nullopt}}});
  auto basis = kernel_basis(stoichiometric_matrix(net));
  REQUIRE(basis.size() == 1);
  CHECK_FALSE(basis[0].positive);
  CHECK(positive_laws(basis).empty());
}

TEST_CASE("positive-law normalization is scaling-canonical") {
  ReactionNetwork net = load_fixture("envz_ompr.crn");
  auto basis = kernel_basis(stoichiometric_matrix(net));
  auto rays1 = positive_laws(basis);
  // rescale the basis arbitrarily and re-run
  for (size_t k = 0; k < basis.size(); ++k) {
    Rational f(3 + static_cast<long>(k), 7);
    for (auto& c : basis[k].coeffs) c *= f;
  }
  auto rays2 = positive_laws(basis);
  REQUIRE(rays1.size() == rays2.size());
  for (size_t k = 0; k < rays1.size(); ++k) CHECK(rays1[k].coeffs == rays2[k].coeffs);
}

TEST_CASE("totals are dot products") {
  std::vector<ConservationLaw> laws{{{Rational(1), Rational(1)}, {0, 1}, true}};
  std::vector<Rational> x0{Rational(3), Rational(2)};
  auto totals = conserved_totals(laws, x0);
  REQUIRE(totals.size() == 1);
  CHECK(totals[0] == Rational(5));
}

TEST_CASE("signaling totals from the all-ones state") {
  ReactionNetwork net = load_fixture("envz_ompr.crn");
  auto basis = kernel_basis(stoichiometric_matrix(net));
  auto rays = positive_laws(basis);
  std::vector<Rational> ones(net.species_count(), Rational(1));
  auto totals = conserved_totals(rays, ones);
  std::vector<Rational> sorted = totals;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == std::vector<Rational>{Rational(4), Rational(5)});
}

TEST_CASE("shifting a species outside the support leaves the total unchanged") {
  ReactionNetwork net = load_fixture("futile_cycle.crn");
  auto rays = positive_laws(kernel_basis(stoichiometric_matrix(net)));
  std::vector<Rational> x0(net.species_count(), Rational(1));
  auto before = conserved_totals(rays, x0);
  int s_index = *net.species_index("S");
  x0[s_index] += Rational(50);
  auto after = conserved_totals(rays, x0);
  for (size_t k = 0; k < rays.size(); ++k) {
    if (rays[k].coeffs[s_index] == 0) CHECK(before[k] == after[k]);
  }
}

TEST_CASE("every basis law annihilates the matrix exactly") {
  std::mt19937 rng(5150);
  for (int trial = 0; trial < 50; ++trial) {
    ReactionNetwork net = crnrob::test::random_conservative_network(rng);
    StoichiometricMatrix S = stoichiometric_matrix(net);
    auto basis = kernel_basis(S);
    CHECK(static_cast<int>(basis.size()) == S.rows - exact_rank(S));
    for (const auto& law : basis) {
      for (int j = 0; j < S.cols; ++j) {
        Rational dot = 0;
        for (int i = 0; i < S.rows; ++i) dot += law.coeffs[i] * Rational(S.columns[j][i]);
        CHECK(dot == 0);
      }
    }
    // the all-ones law is always present in the cone
    auto rays = positive_laws(basis);
    CHECK_FALSE(rays.empty());
  }
}

TEST_CASE("positive laws stay constant along trajectories") {
  ReactionNetwork net = load_fixture("futile_cycle.crn");
  auto prob = SteadyStateProblem::build(net);
  Eigen::VectorXd x0(6);
  x0 << 1.0, 0.5, 2.0, 0.25, 0.75, 1.5;
  SteadyState ss = find_steady_state(net, x0, {});
  REQUIRE(ss.converged);
  auto rays = positive_laws(kernel_basis(stoichiometric_matrix(net)));
  for (const auto& law : rays) {
    double t0 = 0, t1 = 0;
    for (int i = 0; i < 6; ++i) {
      t0 += to_double(law.coeffs[i]) * x0[i];
      t1 += to_double(law.coeffs[i]) * ss.x[i];
    }
    CHECK(std::abs(t1 - t0) < 1e-8 * std::abs(t0));
  }
}
