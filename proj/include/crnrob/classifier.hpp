#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "crnrob/elimination.hpp"

namespace crnrob {

enum class RobustnessKind { ACR, aACR, Divergent, Extinct, Undetermined };
enum class Provenance { SymbolicCertified, NumericInferred, Hybrid };

struct Classification {
  RobustnessKind kind = RobustnessKind::Undetermined;
  std::optional<IsolatedRoot> limit;     // exact value or isolating interval
  std::optional<double> limit_estimate;  // numeric value when available
  Provenance provenance = Provenance::NumericInferred;
  std::string notes;
};

struct ClassifierOptions {
  SolverOptions solver;
  VerdictOptions verdict;
  double grid_lo_factor = 0.1;   // lambda grid = [lo, hi] * max(1, base total scale)
  double grid_hi_factor = 1e6;
  int grid_points = 40;
  int jobs = 1;                  // 1 = serial reference; 0 = all cores
  bool numeric_crosscheck = true;
  bool require_well_defined = true;
  int well_defined_starts = 3;
};

/// Shared per-network analysis state: symbolic system, per-output variety
/// decompositions and per-input numeric sweeps, built lazily and reused by
/// every cell of a table.
class NetworkAnalysis {
 public:
  NetworkAnalysis(const ReactionNetwork& net, std::vector<Rational> x0, ClassifierOptions opts = {});

  const SymbolicSystem& system() const { return sys_; }
  const std::vector<Rational>& x0() const { return x0_; }
  const Eigen::VectorXd& x0_double() const { return x0d_; }
  const std::vector<Rational>& base_totals() const { return totals_; }
  const ClassifierOptions& options() const { return opts_; }
  const SteadyStateProblem& problem() const { return prob_; }

  const SweepResult& sweep(int input);  // cached per input
  const std::vector<VarietyComponent>& components_for_output(int output);  // cached, keep_free = output

  /// Index of the component consistent with the attracting equilibrium at
  /// the largest converged sweep point for this input.
  std::optional<int> select_component(int input, int output);

  Classification classify_pair(int input, int output);

  /// Detailed certificate for one pair (CLI `certify`).
  struct PairCertificate {
    Classification classification;
    std::optional<OutputElimination> elimination;
    std::optional<SpecializedElim> specialized;
    std::optional<LimitCertificate> certificate;
    EmpiricalVerdict verdict;
    bool well_defined = true;
    std::string well_defined_warning;
  };
  PairCertificate certify_pair(int input, int output);

  LambdaGrid grid() const;

 private:
  const ReactionNetwork& net_;
  std::vector<Rational> x0_;
  Eigen::VectorXd x0d_;
  ClassifierOptions opts_;
  SymbolicSystem sys_;
  SteadyStateProblem prob_;
  std::vector<Rational> totals_;
  std::map<int, SweepResult> sweeps_;
  std::map<int, std::vector<VarietyComponent>> components_;
  std::map<int, bool> well_defined_;

  bool input_well_defined(int input, std::string* warning);
};

struct ClassificationTable {
  std::vector<std::string> species;
  std::vector<Classification> cells;  // row-major: input * d + output
  std::vector<Rational> base_x0;

  const Classification& at(int input, int output) const;
  int size() const { return static_cast<int>(species.size()); }
};

Classification classify_pair(const ReactionNetwork& net, const std::vector<Rational>& x0, int input,
                             int output, const ClassifierOptions& opts = {});

ClassificationTable build_table(const ReactionNetwork& net, const std::vector<Rational>& x0,
                                const ClassifierOptions& opts = {});

struct GuaranteeEntry {
  int input = -1;
  int law = -1;                 // index into the positive laws
  std::optional<int> witness;   // species in the law's support classified ACR/aACR
};

/// Executable form of the existence guarantee: every (input, positive law
/// not containing it) pair must have a witness species in the law's support
/// whose classification is ACR or aACR.
struct GuaranteeReport {
  std::vector<GuaranteeEntry> entries;
  bool all_satisfied = true;
  std::vector<std::string> violations;
};

GuaranteeReport guarantee_report(const ReactionNetwork& net, const ClassificationTable& table);

const char* to_string(RobustnessKind kind);
const char* to_string(Provenance p);

}  // namespace crnrob
