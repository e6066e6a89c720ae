#include "crnrob/network.hpp"

#include <set>
#include <sstream>

namespace crnrob {

bool Complex::is_empty() const {
  for (int c : coeffs)
    if (c != 0) return false;
  return true;
}

std::string Complex::to_string(const std::vector<Species>& species) const {
  if (is_empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] == 0) continue;
    if (!first) out << " + ";
    first = false;
    if (coeffs[i] != 1) out << coeffs[i] << " ";
    out << species[i].name;
  }
  return out.str();
}

ReactionNetwork::ReactionNetwork(std::vector<Species> species, std::vector<Reaction> reactions,
                                 std::vector<std::pair<std::string, Rational>> parameters)
    : species_(std::move(species)), reactions_(std::move(reactions)), parameters_(std::move(parameters)) {
  std::set<std::string> names;
  for (size_t i = 0; i < species_.size(); ++i) {
    species_[i].index = static_cast<int>(i);
    if (!names.insert(species_[i].name).second)
      throw NetworkError("duplicate species name: " + species_[i].name);
  }
  std::set<std::pair<std::vector<int>, std::vector<int>>> edges;
  for (const auto& r : reactions_) {
    if (r.reactant.coeffs.size() != species_.size() || r.product.coeffs.size() != species_.size())
      throw NetworkError("complex length does not match species count");
    for (int c : r.reactant.coeffs)
      if (c < 0) throw NetworkError("negative stoichiometric coefficient");
    for (int c : r.product.coeffs)
      if (c < 0) throw NetworkError("negative stoichiometric coefficient");
    if (r.reactant == r.product) throw NetworkError("reaction with identical reactant and product complexes");
    if (r.rate.value <= 0) throw NetworkError("nonpositive rate constant");
    if (r.rate.name) {
      bool found = false;
      for (const auto& [pname, pval] : parameters_) {
        if (pname == *r.rate.name) {
          if (pval != r.rate.value) throw NetworkError("rate constant disagrees with parameter " + *r.rate.name);
          found = true;
          break;
        }
      }
      if (!found) throw NetworkError("unresolved parameter name: " + *r.rate.name);
    }
    if (!edges.insert({r.reactant.coeffs, r.product.coeffs}).second)
      throw NetworkError("duplicate reaction edge (network must be a simple graph)");
  }
  for (const auto& [pname, pval] : parameters_) {
    if (pval <= 0) throw NetworkError("nonpositive parameter value: " + pname);
  }
}

std::optional<int> ReactionNetwork::species_index(const std::string& name) const {
  for (const auto& s : species_)
    if (s.name == name) return s.index;
  return std::nullopt;
}

ReactionNetwork ReactionNetwork::with_reaction(Reaction r) const {
  std::vector<Reaction> rs = reactions_;
  rs.push_back(std::move(r));
  return ReactionNetwork(species_, std::move(rs), parameters_);
}

StoichiometricMatrix stoichiometric_matrix(const ReactionNetwork& net) {
  StoichiometricMatrix m;
  m.rows = net.species_count();
  m.cols = net.reaction_count();
  m.columns.resize(m.cols);
  for (int i = 0; i < m.cols; ++i) {
    const Reaction& r = net.reactions()[i];
    m.columns[i].resize(m.rows);
    for (int s = 0; s < m.rows; ++s) m.columns[i][s] = r.product.coeffs[s] - r.reactant.coeffs[s];
  }
  return m;
}

Eigen::VectorXd mass_action_rhs(const ReactionNetwork& net, const Eigen::VectorXd& x) {
  const int d = net.species_count();
  for (int k = 0; k < d; ++k) {
    if (x[k] < 0) throw std::domain_error("negative concentration: " + net.species_name(k));
  }
  Eigen::VectorXd out = Eigen::VectorXd::Zero(d);
  for (const Reaction& r : net.reactions()) {
    double flux = to_double(r.rate.value);
    for (int k = 0; k < d; ++k) {
      for (int i = 0; i < r.reactant.coeffs[k]; ++i) flux *= x[k];
    }
    if (flux == 0.0) continue;
    for (int k = 0; k < d; ++k) {
      int net_change = r.product.coeffs[k] - r.reactant.coeffs[k];
      if (net_change != 0) out[k] += net_change * flux;
    }
  }
  return out;
}

std::vector<Rational> mass_action_rhs(const ReactionNetwork& net, const std::vector<Rational>& x) {
  const int d = net.species_count();
  for (const auto& xi : x)
    if (xi < 0) throw std::domain_error("negative concentration");
  std::vector<Rational> out(d, Rational(0));
  for (const Reaction& r : net.reactions()) {
    Rational flux = r.rate.value;
    for (int k = 0; k < d; ++k) {
      for (int i = 0; i < r.reactant.coeffs[k]; ++i) flux *= x[k];
    }
    for (int k = 0; k < d; ++k) {
      int net_change = r.product.coeffs[k] - r.reactant.coeffs[k];
      if (net_change != 0) out[k] += net_change * flux;
    }
  }
  return out;
}

Eigen::MatrixXd mass_action_jacobian(const ReactionNetwork& net, const Eigen::VectorXd& x) {
  const int d = net.species_count();
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(d, d);
  for (const Reaction& r : net.reactions()) {
    for (int j = 0; j < d; ++j) {
      int e = r.reactant.coeffs[j];
      if (e == 0) continue;
      // d/dx_j of k * prod x_k^{e_k} = k * e_j * x_j^{e_j-1} * prod_{k!=j} x_k^{e_k}
      double dflux = to_double(r.rate.value) * e;
      for (int i = 0; i < e - 1; ++i) dflux *= x[j];
      for (int k = 0; k < d; ++k) {
        if (k == j) continue;
        for (int i = 0; i < r.reactant.coeffs[k]; ++i) dflux *= x[k];
      }
      if (dflux == 0.0) continue;
      for (int k = 0; k < d; ++k) {
        int net_change = r.product.coeffs[k] - r.reactant.coeffs[k];
        if (net_change != 0) jac(k, j) += net_change * dflux;
      }
    }
  }
  return jac;
}

}  // namespace crnrob
