#pragma once

#include <fstream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "crnrob/network.hpp"
#include "crnrob/parser.hpp"

namespace crnrob::test {

inline std::string fixture_path(const std::string& name) {
  return std::string(CRNROB_NETWORKS_DIR) + "/" + name;
}

inline ReactionNetwork load_fixture(const std::string& name) {
  std::ifstream in(fixture_path(name));
  if (!in) throw std::runtime_error("missing fixture " + name);
  std::ostringstream buf;
  buf << in.rdbuf();
  ParseResult result = parse_network(buf.str(), name);
  if (!result.ok()) {
    std::string msg = "fixture " + name + " failed to parse:";
    for (const auto& d : result.diagnostics) msg += "\n  " + d.to_string();
    throw std::runtime_error(msg);
  }
  return *result.network;
}

/// Independent rank oracle: fraction-free row elimination on integers.
inline int integer_matrix_rank(std::vector<std::vector<long>> m) {
  if (m.empty()) return 0;
  size_t rows = m.size(), cols = m[0].size();
  int rank = 0;
  size_t row = 0;
  for (size_t col = 0; col < cols && row < rows; ++col) {
    size_t piv = row;
    while (piv < rows && m[piv][col] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[row], m[piv]);
    for (size_t i = row + 1; i < rows; ++i) {
      if (m[i][col] == 0) continue;
      long a = m[row][col], b = m[i][col];
      for (size_t j = 0; j < cols; ++j) m[i][j] = m[i][j] * a - m[row][j] * b;
      long g = 0;
      for (size_t j = 0; j < cols; ++j) g = std::gcd(g, std::abs(m[i][j]));
      if (g > 1)
        for (size_t j = 0; j < cols; ++j) m[i][j] /= g;
    }
    ++row;
    ++rank;
  }
  return rank;
}

/// Random molecularity-preserving network: every reaction conserves the
/// total molecule count, so [1,...,1] is always a positive conservation law.
inline ReactionNetwork random_conservative_network(std::mt19937& rng, int max_species = 5) {
  std::uniform_int_distribution<int> dpick(2, max_species);
  const int d = dpick(rng);
  std::vector<Species> species;
  for (int i = 0; i < d; ++i) species.push_back({"A" + std::to_string(i + 1), i});

  auto random_complex = [&](int total) {
    Complex c;
    c.coeffs.assign(d, 0);
    std::uniform_int_distribution<int> sp(0, d - 1);
    for (int k = 0; k < total; ++k) c.coeffs[sp(rng)] += 1;
    return c;
  };

  std::uniform_int_distribution<int> rcount(2, 6);
  std::uniform_int_distribution<int> molecularity(1, 2);
  std::uniform_int_distribution<int> rate_num(1, 6);
  std::uniform_int_distribution<int> rate_den(1, 3);

  int want = rcount(rng);
  std::vector<Reaction> reactions;
  std::set<std::pair<std::vector<int>, std::vector<int>>> edges;
  int guard = 0;
  while (static_cast<int>(reactions.size()) < want && guard++ < 200) {
    int total = molecularity(rng);
    Complex lhs = random_complex(total);
    Complex rhs = random_complex(total);
    if (lhs == rhs) continue;
    if (!edges.insert({lhs.coeffs, rhs.coeffs}).second) continue;
    Rational rate = make_fraction(rate_num(rng), rate_den(rng));
    reactions.push_back({lhs, rhs, {rate, std::nullopt}});
  }
  if (reactions.empty()) {
    Complex lhs, rhs;
    lhs.coeffs.assign(d, 0);
    rhs.coeffs.assign(d, 0);
    lhs.coeffs[0] = 1;
    rhs.coeffs[1 % d] = 1;
    reactions.push_back({lhs, rhs, {Rational(1), std::nullopt}});
  }
  return ReactionNetwork(std::move(species), std::move(reactions));
}

}  // namespace crnrob::test
