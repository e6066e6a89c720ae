#include <doctest.h>

#include <random>

#include "crnrob/parser.hpp"
#include "testutil.hpp"

using namespace crnrob;

TEST_CASE("parses the archetypal loop with named constants") {
  ParseResult r = parse_network("X + Y -> 2 Y ; alpha\nY -> X ; beta\nparams: alpha=2, beta=1\n");
  REQUIRE(r.ok());
  const ReactionNetwork& net = *r.network;
  REQUIRE(net.species_count() == 2);
  CHECK(net.species_name(0) == "X");
  CHECK(net.species_name(1) == "Y");
  REQUIRE(net.reaction_count() == 2);
  CHECK(net.reactions()[0].rate.value == Rational(2));
  CHECK(net.reactions()[0].rate.name == "alpha");
  CHECK(net.reactions()[1].rate.value == Rational(1));
  CHECK(net.reactions()[0].reactant.coeffs == std::vector<int>{1, 1});
  CHECK(net.reactions()[0].product.coeffs == std::vector<int>{0, 2});
}

TEST_CASE("reversible arrow expands forward then reverse") {
  ParseResult r = parse_network("Y <-> X ; beta, gamma\nparams: beta=1, gamma=2\n");
  REQUIRE(r.ok());
  const ReactionNetwork& net = *r.network;
  REQUIRE(net.reaction_count() == 2);
  // forward: Y -> X with beta
  CHECK(net.reactions()[0].reactant.coeffs == std::vector<int>{1, 0});  // Y registered first
  CHECK(net.reactions()[0].rate.value == Rational(1));
  // reverse: X -> Y with gamma
  CHECK(net.reactions()[1].rate.value == Rational(2));

  // exactly equivalent to writing the two irreversible lines
  ParseResult merged = parse_network("Y <-> X ; 1, 2\n");
  ParseResult two = parse_network("Y -> X ; 1\nX -> Y ; 2\n");
  REQUIRE(merged.ok());
  REQUIRE(two.ok());
  CHECK(serialize(*merged.network) == serialize(*two.network));
}

TEST_CASE("nonpositive rate constants are rejected with a located diagnostic") {
  ParseResult r = parse_network("X + Y -> 2Y ; -1\n");
  CHECK_FALSE(r.ok());
  REQUIRE_FALSE(r.diagnostics.empty());
  const auto& d = r.diagnostics[0];
  CHECK(d.line == 1);
  CHECK(d.column == 15);
  CHECK(d.message.find("nonpositive") != std::string::npos);
}

TEST_CASE("several errors are collected in one pass") {
  ParseResult r = parse_network("A -> B ; k_missing\nA -> ; 1\nC -> C ; 1\n");
  CHECK_FALSE(r.ok());
  CHECK(r.diagnostics.size() >= 3);
}

TEST_CASE("duplicate edges violate the simple-graph requirement") {
  ParseResult r = parse_network("A -> B ; 1\nA -> B ; 2\n");
  CHECK_FALSE(r.ok());
  bool found = false;
  for (const auto& d : r.diagnostics) found = found || d.message.find("duplicate") != std::string::npos;
  CHECK(found);
}

TEST_CASE("species header pins the ordering") {
  ParseResult r = parse_network("species: B, A\nA -> B ; 1\n");
  REQUIRE(r.ok());
  CHECK(r.network->species_name(0) == "B");
  CHECK(r.network->species_name(1) == "A");

  ParseResult unknown = parse_network("species: A\nA -> B ; 1\n");
  CHECK_FALSE(unknown.ok());
}

TEST_CASE("empty complex, comments and decimals") {
  ParseResult r = parse_network("# inflow/outflow\n0 -> X ; 0.1\nX -> 0 ; 3/2\n");
  REQUIRE(r.ok());
  CHECK(r.network->reactions()[0].rate.value == Rational(1, 10));
  CHECK(r.network->reactions()[1].rate.value == Rational(3, 2));
  CHECK(r.network->reactions()[0].reactant.is_empty());
}

TEST_CASE("coefficient forms 2Y and 2 Y are equivalent") {
  ParseResult a = parse_network("X + Y -> 2Y ; 1\n");
  ParseResult b = parse_network("X + Y -> 2 Y ; 1\n");
  REQUIRE(a.ok());
  REQUIRE(b.ok());
  CHECK(serialize(*a.network) == serialize(*b.network));
}

TEST_CASE("round-trip: serialize then reparse is the identity") {
  for (const char* name : {"archetypal.crn", "archetypal_mod.crn", "envz_ompr.crn", "envz_ompr_mod.crn",
                           "futile_cycle.crn", "futile_cycle_mod.crn"}) {
    ReactionNetwork net = crnrob::test::load_fixture(name);
    std::string text = serialize(net);
    ParseResult again = parse_network(text, name);
    REQUIRE(again.ok());
    CHECK(serialize(*again.network) == text);
    // identical species order, reaction order and constants
    CHECK(again.network->species().size() == net.species().size());
    for (int i = 0; i < net.species_count(); ++i)
      CHECK(again.network->species_name(i) == net.species_name(i));
    REQUIRE(again.network->reaction_count() == net.reaction_count());
    for (int i = 0; i < net.reaction_count(); ++i) {
      CHECK(again.network->reactions()[i].reactant == net.reactions()[i].reactant);
      CHECK(again.network->reactions()[i].product == net.reactions()[i].product);
      CHECK(again.network->reactions()[i].rate.value == net.reactions()[i].rate.value);
    }
  }
}

TEST_CASE("fuzz: arbitrary bytes never crash the parser") {
  std::mt19937 rng(424242);
  std::uniform_int_distribution<int> len(0, 60);
  std::uniform_int_distribution<int> mode(0, 2);
  std::uniform_int_distribution<int> byte(0, 255);
  const std::string alphabet = "XY->;,=+ 012\t\n#:<>ab/.";
  std::uniform_int_distribution<size_t> pick(0, alphabet.size() - 1);

  for (int trial = 0; trial < 20000; ++trial) {
    std::string input;
    int n = len(rng);
    int m = mode(rng);
    for (int i = 0; i < n; ++i) {
      if (m == 0)
        input.push_back(static_cast<char>(byte(rng)));
      else
        input.push_back(alphabet[pick(rng)]);
    }
    ParseResult r = parse_network(input);  // must not throw or crash
    if (!r.ok()) CHECK_FALSE(r.diagnostics.empty());
  }
}
