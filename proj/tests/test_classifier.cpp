#include <doctest.h>

#include "crnrob/classifier.hpp"
#include "testutil.hpp"

using namespace crnrob;
using crnrob::test::load_fixture;

namespace {

ClassifierOptions fast_options() {
  ClassifierOptions opts;
  opts.grid_points = 25;
  opts.jobs = 0;  // all cores
  return opts;
}

std::vector<Rational> ones(int n) { return std::vector<Rational>(n, Rational(1)); }

}  // namespace

TEST_CASE("signaling pairs: robust, divergent and extinct cells") {
  ReactionNetwork net = load_fixture("envz_ompr.crn");
  NetworkAnalysis analysis(net, ones(7), fast_options());
  int X = *net.species_index("X");
  int Xp = *net.species_index("Xp");
  int Yp = *net.species_index("Yp");
  int Y = *net.species_index("Y");

  Classification acr = analysis.classify_pair(X, Yp);
  CHECK(acr.kind == RobustnessKind::ACR);
  CHECK(acr.provenance == Provenance::SymbolicCertified);
  REQUIRE(acr.limit.has_value());
  CHECK(acr.limit->value == Rational(2));

  Classification div = analysis.classify_pair(X, Xp);
  CHECK(div.kind == RobustnessKind::Divergent);

  Classification ext = analysis.classify_pair(Y, Xp);
  CHECK(ext.kind == RobustnessKind::Extinct);

  Classification aacr = analysis.classify_pair(X, *net.species_index("XpY"));
  CHECK(aacr.kind == RobustnessKind::aACR);
  REQUIRE(aacr.limit.has_value());
  CHECK(aacr.limit->value == Rational(1));
}

TEST_CASE("modified signaling loses exact robustness") {
  ReactionNetwork net = load_fixture("envz_ompr_mod.crn");
  NetworkAnalysis analysis(net, ones(7), fast_options());
  int X = *net.species_index("X");
  int Y = *net.species_index("Y");
  int Yp = *net.species_index("Yp");

  Classification cell = analysis.classify_pair(X, Yp);
  CHECK(cell.kind == RobustnessKind::Extinct);

  Classification cell2 = analysis.classify_pair(Y, Yp);
  CHECK(cell2.kind == RobustnessKind::aACR);
  REQUIRE(cell2.limit.has_value());
  CHECK(cell2.limit->value == Rational(2));  // the old exactly-robust value
}

TEST_CASE("guarantee report finds witnesses on the futile cycle") {
  ReactionNetwork net = load_fixture("futile_cycle.crn");
  ClassificationTable table = build_table(net, ones(6), fast_options());
  GuaranteeReport report = guarantee_report(net, table);
  CHECK(report.all_satisfied);
  CHECK_FALSE(report.entries.empty());
  // every applicable (input, law) pair got an entry: inputs outside each
  // support: T1 misses E,F / T2 misses S,P,F,PF / T3 misses S,P,E,SE
  CHECK(report.entries.size() == 2 + 4 + 4);
}

TEST_CASE("a network without positive laws yields an empty report") {
  ParseResult r = parse_network("A + B -> 2 A ; 1\n");
  REQUIRE(r.ok());
  ClassificationTable table;
  table.species = {"A", "B"};
  table.cells.resize(4);
  GuaranteeReport report = guarantee_report(*r.network, table);
  CHECK(report.entries.empty());
  CHECK(report.all_satisfied);
}

TEST_CASE("certified cells are deterministic across seeds") {
  ReactionNetwork net = load_fixture("archetypal_mod.crn");
  ClassifierOptions a = fast_options();
  ClassifierOptions b = fast_options();
  b.solver.seed = 999;
  Classification ca = classify_pair(net, ones(2), 0, 0, a);
  Classification cb = classify_pair(net, ones(2), 0, 0, b);
  CHECK(ca.kind == cb.kind);
  REQUIRE(ca.limit.has_value());
  REQUIRE(cb.limit.has_value());
  CHECK(ca.limit->value == cb.limit->value);
  CHECK(ca.kind == RobustnessKind::aACR);
  CHECK(ca.limit->value == Rational(1));
}
