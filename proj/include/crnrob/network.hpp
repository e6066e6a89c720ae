#pragma once

#include <Eigen/Dense>

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "crnrob/rational.hpp"

namespace crnrob {

struct NetworkError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Species {
  std::string name;
  int index = 0;
};

/// Stoichiometric coefficients of one side of a reaction, dense over the
/// network's species ordering.
struct Complex {
  std::vector<int> coeffs;

  bool operator==(const Complex& o) const { return coeffs == o.coeffs; }
  bool is_empty() const;
  std::string to_string(const std::vector<Species>& species) const;
};

struct RateConstant {
  Rational value;                    // always resolved, > 0
  std::optional<std::string> name;   // set when given as a named parameter
};

struct Reaction {
  Complex reactant;
  Complex product;
  RateConstant rate;
};

/// A mass-action reaction network. Immutable after construction; derived
/// networks (e.g. with an extra reverse reaction) are new values.
class ReactionNetwork {
 public:
  /// Validates invariants: unique species names, complex lengths, positive
  /// rate constants, reactant != product, no duplicate edges, parameter
  /// names resolving. Throws NetworkError on violation.
  ReactionNetwork(std::vector<Species> species, std::vector<Reaction> reactions,
                  std::vector<std::pair<std::string, Rational>> parameters = {});

  const std::vector<Species>& species() const { return species_; }
  const std::vector<Reaction>& reactions() const { return reactions_; }
  const std::vector<std::pair<std::string, Rational>>& parameters() const { return parameters_; }

  int species_count() const { return static_cast<int>(species_.size()); }
  int reaction_count() const { return static_cast<int>(reactions_.size()); }

  std::optional<int> species_index(const std::string& name) const;
  const std::string& species_name(int i) const { return species_[i].name; }

  ReactionNetwork with_reaction(Reaction r) const;

 private:
  std::vector<Species> species_;
  std::vector<Reaction> reactions_;
  std::vector<std::pair<std::string, Rational>> parameters_;
};

/// d x r integer matrix; column i is product - reactant of reaction i.
struct StoichiometricMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<std::vector<int>> columns;  // columns[i] has length rows

  int at(int species, int reaction) const { return columns[reaction][species]; }
};

StoichiometricMatrix stoichiometric_matrix(const ReactionNetwork& net);

/// Mass-action vector field dx/dt = sum_i k_i (product_i - reactant_i) x^reactant_i.
/// Throws std::domain_error when any concentration is negative.
Eigen::VectorXd mass_action_rhs(const ReactionNetwork& net, const Eigen::VectorXd& x);

/// Exact-arithmetic evaluation of the same vector field.
std::vector<Rational> mass_action_rhs(const ReactionNetwork& net, const std::vector<Rational>& x);

/// Analytic Jacobian of the mass-action vector field.
Eigen::MatrixXd mass_action_jacobian(const ReactionNetwork& net, const Eigen::VectorXd& x);

}  // namespace crnrob
