#include "crnrob/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace crnrob {

const char* to_string(RobustnessKind kind) {
  switch (kind) {
    case RobustnessKind::ACR: return "ACR";
    case RobustnessKind::aACR: return "aACR";
    case RobustnessKind::Divergent: return "Divergent";
    case RobustnessKind::Extinct: return "Extinct";
    case RobustnessKind::Undetermined: return "Undetermined";
  }
  return "Undetermined";
}

const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::SymbolicCertified: return "SymbolicCertified";
    case Provenance::NumericInferred: return "NumericInferred";
    case Provenance::Hybrid: return "Hybrid";
  }
  return "NumericInferred";
}

NetworkAnalysis::NetworkAnalysis(const ReactionNetwork& net, std::vector<Rational> x0, ClassifierOptions opts)
    : net_(net), x0_(std::move(x0)), opts_(opts), sys_(SymbolicSystem::build(net)) {
  if (static_cast<int>(x0_.size()) != net.species_count())
    throw std::invalid_argument("x0 length does not match species count");
  prob_ = SteadyStateProblem::build(net, sys_.laws);
  x0d_.resize(net.species_count());
  for (int i = 0; i < net.species_count(); ++i) x0d_[i] = to_double(x0_[i]);
  totals_ = conserved_totals(sys_.laws, x0_);
}

LambdaGrid NetworkAnalysis::grid() const {
  double scale = 1.0;
  for (const auto& t : totals_) scale = std::max(scale, std::abs(to_double(t)));
  return LambdaGrid::geometric(opts_.grid_lo_factor * scale, opts_.grid_hi_factor * scale, opts_.grid_points);
}

const SweepResult& NetworkAnalysis::sweep(int input) {
  auto it = sweeps_.find(input);
  if (it != sweeps_.end()) return it->second;
  LambdaGrid g = grid();
  SweepResult r = opts_.jobs == 1 ? sweep_serial(prob_, x0d_, input, g, opts_.solver)
                                  : sweep_parallel(prob_, x0d_, input, g, opts_.solver, opts_.jobs);
  return sweeps_.emplace(input, std::move(r)).first->second;
}

const std::vector<VarietyComponent>& NetworkAnalysis::components_for_output(int output) {
  auto it = components_.find(output);
  if (it != components_.end()) return it->second;
  DecomposeOptions dopts;
  dopts.keep_free = output;
  return components_.emplace(output, decompose_steady_variety(sys_, dopts)).first->second;
}

std::optional<int> NetworkAnalysis::select_component(int input, int output) {
  const auto& comps = components_for_output(output);
  if (comps.empty()) return std::nullopt;
  const SweepResult& sw = sweep(input);
  // probe well into the asymptotic regime but away from the grid's extreme
  // end, where double-precision steady states are worst conditioned
  const SteadyState* probe = nullptr;
  size_t preferred = sw.states.size() * 2 / 3;
  for (size_t k = preferred; k < sw.states.size() && !probe; ++k)
    if (sw.states[k].converged) probe = &sw.states[k];
  for (size_t k = preferred; k-- > 0 && !probe;)
    if (sw.states[k].converged) probe = &sw.states[k];
  if (!probe) return std::nullopt;
  int best = -1;
  double best_res = 0.0;
  for (size_t c = 0; c < comps.size(); ++c) {
    double res = component_residual(sys_, comps[c], probe->x, probe->compat_totals);
    if (best < 0 || res < best_res) {
      best = static_cast<int>(c);
      best_res = res;
    }
  }
  if (best_res > 1e-4) return std::nullopt;  // no component matches the attractor
  return best;
}

bool NetworkAnalysis::input_well_defined(int input, std::string* warning) {
  auto it = well_defined_.find(input);
  if (it == well_defined_.end()) {
    double probe = grid().values.back();
    std::string warn;
    bool ok = check_well_defined(prob_, x0d_, input, probe, opts_.well_defined_starts, opts_.solver, &warn);
    it = well_defined_.emplace(input, ok).first;
    if (!ok && warning) *warning = warn;
  }
  return it->second;
}

namespace {

std::optional<VerdictKind> symbolic_as_verdict(RobustnessKind kind) {
  switch (kind) {
    case RobustnessKind::ACR:
    case RobustnessKind::aACR: return VerdictKind::FinitePositiveLimit;
    case RobustnessKind::Extinct: return VerdictKind::DecaysToZero;
    case RobustnessKind::Divergent: return VerdictKind::DivergesToInfinity;
    default: return std::nullopt;
  }
}

Classification from_numeric(const EmpiricalVerdict& v) {
  Classification c;
  c.provenance = Provenance::NumericInferred;
  switch (v.kind) {
    case VerdictKind::FinitePositiveLimit:
      c.kind = RobustnessKind::aACR;
      c.limit_estimate = v.limit_estimate;
      c.notes = "numeric plateau; ACR and aACR are indistinguishable numerically";
      break;
    case VerdictKind::DecaysToZero:
      c.kind = RobustnessKind::Extinct;
      c.limit_estimate = 0.0;
      break;
    case VerdictKind::DivergesToInfinity:
      c.kind = RobustnessKind::Divergent;
      break;
    case VerdictKind::Inconclusive:
      c.kind = RobustnessKind::Undetermined;
      c.notes = "numeric verdict inconclusive";
      break;
  }
  return c;
}

void append_note(Classification& c, const std::string& note) {
  if (note.empty()) return;
  if (!c.notes.empty()) c.notes += "; ";
  c.notes += note;
}

}  // namespace

NetworkAnalysis::PairCertificate NetworkAnalysis::certify_pair(int input, int output) {
  PairCertificate out;
  Classification& cls = out.classification;

  std::string warn;
  out.well_defined = input_well_defined(input, &warn);
  out.well_defined_warning = warn;
  if (!out.well_defined && opts_.require_well_defined) {
    cls.kind = RobustnessKind::Undetermined;
    cls.notes = "dose-response curve not well defined: " + warn;
    return out;
  }

  DoseResponseCurve curve = curve_from_sweep(sweep(input), output);
  out.verdict = empirical_verdict(curve, opts_.verdict);

  // symbolic certification
  std::optional<LimitCertificate> cert;
  std::optional<int> comp_index = select_component(input, output);
  if (comp_index) {
    const VarietyComponent& comp = components_for_output(output)[*comp_index];
    out.elimination = eliminate_to_univariate(sys_, comp, output);
    if (out.elimination) {
      try {
        out.specialized = specialize_input(sys_, out.elimination->projection, output, input, totals_);
        cert = certified_limit(sys_, *out.elimination, *out.specialized);
        if (comp.boundary) cert->notes.push_back("boundary component selected by the attracting equilibrium");
      } catch (const std::exception& e) {
        out.specialized.reset();
        LimitCertificate bad;
        bad.kind = CertKind::Unsupported;
        bad.notes.push_back(e.what());
        cert = bad;
      }
    }
  }
  out.certificate = cert;

  if (!cert || cert->kind == CertKind::Unsupported || cert->kind == CertKind::Inconsistent) {
    cls = from_numeric(out.verdict);
    if (cert)
      for (const auto& n : cert->notes) append_note(cls, n);
    else
      append_note(cls, "no symbolic projection available");
    return out;
  }

  auto emit_limit = [&](const IsolatedRoot& r) {
    cls.limit = r;
    cls.limit_estimate = r.approx();
  };

  bool hint_used = false;
  switch (cert->kind) {
    case CertKind::EventuallyConstant: {
      const IsolatedRoot& r = *cert->limit;
      if (r.exact && r.value == 0) {
        cls.kind = RobustnessKind::Extinct;
        append_note(cls, "eventually constant at zero");
      } else {
        cls.kind = RobustnessKind::ACR;
        append_note(cls, "dose-response is eventually constant");
      }
      emit_limit(r);
      break;
    }
    case CertKind::ExactLimit:
      cls.kind = RobustnessKind::aACR;
      emit_limit(*cert->limit);
      break;
    case CertKind::Zero:
      cls.kind = RobustnessKind::Extinct;
      emit_limit(*cert->limit);
      break;
    case CertKind::Infinity:
      cls.kind = RobustnessKind::Divergent;
      break;
    case CertKind::Ambiguous: {
      // resolve with the numeric hint
      const auto& cands = cert->candidates;
      std::optional<LimitCandidate> chosen;
      if (out.verdict.kind == VerdictKind::DivergesToInfinity) {
        for (const auto& c : cands)
          if (c.infinity) chosen = c;
      } else if (out.verdict.kind == VerdictKind::DecaysToZero) {
        for (const auto& c : cands)
          if (!c.infinity && c.root.exact && c.root.value == 0) chosen = c;
      } else if (out.verdict.kind == VerdictKind::FinitePositiveLimit && out.verdict.limit_estimate) {
        double est = *out.verdict.limit_estimate;
        int matches = 0;
        for (const auto& c : cands) {
          if (c.infinity) continue;
          double v = c.root.approx();
          if (std::abs(v - est) <= 0.02 * std::max(std::abs(est), 1e-12)) {
            ++matches;
            chosen = c;
          }
        }
        if (matches != 1) chosen.reset();
      }
      if (!chosen) {
        cls.kind = RobustnessKind::Undetermined;
        std::ostringstream msg;
        msg << "ambiguous candidates {";
        for (size_t k = 0; k < cands.size(); ++k) msg << (k ? ", " : "") << cands[k].to_string();
        msg << "} not resolved by numerics";
        append_note(cls, msg.str());
        for (const auto& n : cert->notes) append_note(cls, n);
        return out;
      }
      hint_used = true;
      if (chosen->infinity) {
        cls.kind = RobustnessKind::Divergent;
      } else if (chosen->root.exact && chosen->root.value == 0) {
        cls.kind = RobustnessKind::Extinct;
        emit_limit(chosen->root);
      } else {
        cls.kind = RobustnessKind::aACR;
        emit_limit(chosen->root);
      }
      append_note(cls, "ambiguity resolved by numeric hint");
      break;
    }
    default:
      break;
  }
  cls.provenance = hint_used ? Provenance::Hybrid : Provenance::SymbolicCertified;
  for (const auto& n : cert->notes) append_note(cls, n);

  // numeric cross-check: verdict-level agreement required
  if (opts_.numeric_crosscheck && out.verdict.kind != VerdictKind::Inconclusive) {
    auto expect = symbolic_as_verdict(cls.kind);
    if (expect && *expect != out.verdict.kind) {
      std::ostringstream msg;
      msg << "symbolic verdict " << to_string(cls.kind) << " conflicts with numeric "
          << crnrob::to_string(out.verdict.kind);
      cls.kind = RobustnessKind::Undetermined;
      append_note(cls, msg.str());
      return out;
    }
    if (cls.limit && out.verdict.kind == VerdictKind::FinitePositiveLimit && out.verdict.limit_estimate) {
      double exact = cls.limit->approx();
      double est = *out.verdict.limit_estimate;
      if (std::abs(exact - est) > 0.02 * std::max({std::abs(exact), std::abs(est), 1e-12})) {
        std::ostringstream msg;
        msg << "certified limit " << cls.limit->to_string() << " conflicts with numeric tail " << est;
        cls.kind = RobustnessKind::Undetermined;
        append_note(cls, msg.str());
        return out;
      }
    }
  }
  if (!cls.limit_estimate && out.verdict.limit_estimate) cls.limit_estimate = out.verdict.limit_estimate;
  return out;
}

Classification NetworkAnalysis::classify_pair(int input, int output) {
  return certify_pair(input, output).classification;
}

Classification classify_pair(const ReactionNetwork& net, const std::vector<Rational>& x0, int input,
                             int output, const ClassifierOptions& opts) {
  NetworkAnalysis analysis(net, x0, opts);
  return analysis.classify_pair(input, output);
}

const Classification& ClassificationTable::at(int input, int output) const {
  return cells[static_cast<size_t>(input) * species.size() + static_cast<size_t>(output)];
}

ClassificationTable build_table(const ReactionNetwork& net, const std::vector<Rational>& x0,
                                const ClassifierOptions& opts) {
  NetworkAnalysis analysis(net, x0, opts);
  const int d = net.species_count();
  ClassificationTable table;
  table.base_x0 = x0;
  for (const auto& s : net.species()) table.species.push_back(s.name);
  table.cells.resize(static_cast<size_t>(d) * d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      Classification cell;
      try {
        cell = analysis.classify_pair(i, j);
      } catch (const std::exception& e) {
        cell.kind = RobustnessKind::Undetermined;
        cell.notes = std::string("classification failed: ") + e.what();
      }
      table.cells[static_cast<size_t>(i) * d + j] = std::move(cell);
    }
  }
  return table;
}

GuaranteeReport guarantee_report(const ReactionNetwork& net, const ClassificationTable& table) {
  GuaranteeReport report;
  auto basis = kernel_basis(stoichiometric_matrix(net));
  auto rays = positive_laws(basis);
  const int d = net.species_count();
  for (int i = 0; i < d; ++i) {
    for (size_t k = 0; k < rays.size(); ++k) {
      if (rays[k].coeffs[i] != 0) continue;  // the law shifts with this input
      GuaranteeEntry entry;
      entry.input = i;
      entry.law = static_cast<int>(k);
      for (int j : rays[k].support) {
        RobustnessKind kind = table.at(i, j).kind;
        if (kind == RobustnessKind::ACR || kind == RobustnessKind::aACR) {
          entry.witness = j;
          break;
        }
      }
      if (!entry.witness) {
        report.all_satisfied = false;
        std::ostringstream msg;
        msg << "input " << net.species_name(i) << ", law " << rays[k].to_string(net)
            << ": no ACR/aACR witness in the support";
        report.violations.push_back(msg.str());
      }
      report.entries.push_back(entry);
    }
  }
  return report;
}

}  // namespace crnrob
