#include "crnrob/cli.hpp"

#include <json.hpp>

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "crnrob/parser.hpp"

namespace crnrob::cli {

namespace {

using nlohmann::json;

constexpr const char* kSchemaVersion = "1";

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool atomic_write(const std::string& path, const std::string& content, std::ostream& err) {
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      err << "cannot open " << tmp.string() << " for writing\n";
      return false;
    }
    out << content;
    if (!out.good()) {
      err << "write failed: " << tmp.string() << "\n";
      return false;
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    err << "rename failed: " << ec.message() << "\n";
    return false;
  }
  return true;
}

/// Writes to out_path atomically when set, otherwise to the stream.
bool emit(const std::string& content, const std::string& out_path, std::ostream& out, std::ostream& err) {
  if (out_path.empty()) {
    out << content;
    return true;
  }
  return atomic_write(out_path, content, err);
}

ClassifierOptions options_from(const RunConfig& config) {
  ClassifierOptions opts;
  opts.solver.seed = config.seed;
  opts.jobs = config.jobs;
  if (config.final_tol) opts.solver.final_tol = *config.final_tol;
  if (config.switch_tol) opts.solver.switch_tol = *config.switch_tol;
  if (config.plateau_tol) opts.verdict.plateau_tol = *config.plateau_tol;
  if (config.zero_tol) opts.verdict.zero_tol = *config.zero_tol;
  if (config.slope_tol) opts.verdict.slope_tol = *config.slope_tol;
  return opts;
}

json law_json(const ReactionNetwork& net, const ConservationLaw& law) {
  json j;
  j["expression"] = law.to_string(net);
  j["positive"] = law.positive;
  json coeffs = json::object();
  for (int i : law.support) coeffs[net.species_name(i)] = to_string(law.coeffs[i]);
  j["coefficients"] = coeffs;
  json support = json::array();
  for (int i : law.support) support.push_back(net.species_name(i));
  j["support"] = support;
  return j;
}

json classification_json(const Classification& c) {
  json j;
  j["kind"] = to_string(c.kind);
  j["provenance"] = to_string(c.provenance);
  if (c.limit) j["limit"] = c.limit->to_string();
  if (c.limit_estimate) j["limit_estimate"] = *c.limit_estimate;
  if (!c.notes.empty()) j["notes"] = c.notes;
  return j;
}

std::string short_kind(RobustnessKind k) {
  switch (k) {
    case RobustnessKind::ACR: return "ACR";
    case RobustnessKind::aACR: return "aACR";
    case RobustnessKind::Divergent: return "->inf";
    case RobustnessKind::Extinct: return "->0";
    case RobustnessKind::Undetermined: return "?";
  }
  return "?";
}

std::string table_text(const ClassificationTable& table) {
  const int d = table.size();
  size_t width = 6;
  for (const auto& s : table.species) width = std::max(width, s.size() + 1);
  for (const auto& c : table.cells) width = std::max(width, short_kind(c.kind).size() + 1);
  std::ostringstream out;
  out << std::setw(static_cast<int>(width)) << "in\\out";
  for (const auto& s : table.species) out << std::setw(static_cast<int>(width)) << s;
  out << "\n";
  for (int i = 0; i < d; ++i) {
    out << std::setw(static_cast<int>(width)) << table.species[i];
    for (int j = 0; j < d; ++j) out << std::setw(static_cast<int>(width)) << short_kind(table.at(i, j).kind);
    out << "\n";
  }
  return out.str();
}

std::string table_csv(const ClassificationTable& table) {
  std::ostringstream out;
  out << "input,output,kind,limit,limit_estimate,provenance,notes\n";
  const int d = table.size();
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const Classification& c = table.at(i, j);
      out << table.species[i] << "," << table.species[j] << "," << to_string(c.kind) << ",";
      if (c.limit) out << c.limit->to_string();
      out << ",";
      if (c.limit_estimate) out << format_double(*c.limit_estimate);
      out << "," << to_string(c.provenance) << ",";
      std::string notes = c.notes;
      for (auto& ch : notes)
        if (ch == ',') ch = ';';
      out << notes << "\n";
    }
  }
  return out.str();
}

json table_json(const ClassificationTable& table) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["species"] = table.species;
  json x0 = json::object();
  for (size_t i = 0; i < table.base_x0.size(); ++i) x0[table.species[i]] = to_string(table.base_x0[i]);
  j["x0"] = x0;
  json cells = json::array();
  const int d = table.size();
  for (int i = 0; i < d; ++i) {
    for (int jx = 0; jx < d; ++jx) {
      json cell = classification_json(table.at(i, jx));
      cell["input"] = table.species[i];
      cell["output"] = table.species[jx];
      cells.push_back(cell);
    }
  }
  j["cells"] = cells;
  return j;
}

ReactionNetwork with_parameters(const ReactionNetwork& net, const std::map<std::string, Rational>& overrides) {
  std::vector<std::pair<std::string, Rational>> params = net.parameters();
  for (auto& [name, value] : params) {
    auto it = overrides.find(name);
    if (it != overrides.end()) value = it->second;
  }
  std::map<std::string, Rational> lookup(params.begin(), params.end());
  std::vector<Reaction> reactions = net.reactions();
  for (auto& r : reactions) {
    if (r.rate.name) r.rate.value = lookup.at(*r.rate.name);
  }
  return ReactionNetwork(net.species(), std::move(reactions), std::move(params));
}

std::string plot_data_csv(const DoseResponseCurve& curve, const Classification& cls) {
  std::ostringstream out;
  out << "# kind=" << to_string(cls.kind) << "\n";
  if (cls.limit)
    out << "# limit=" << cls.limit->to_string() << "\n";
  else if (cls.limit_estimate)
    out << "# limit=" << format_double(*cls.limit_estimate) << "\n";
  out << "lambda,value\n";
  for (size_t k = 0; k < curve.lambdas.size(); ++k) {
    if (!curve.converged[k]) continue;
    out << format_double(curve.lambdas[k]) << "," << format_double(curve.values[k]) << "\n";
  }
  return out.str();
}

int resolve_species(const ReactionNetwork& net, const std::string& name, std::ostream& err) {
  auto idx = net.species_index(name);
  if (!idx) {
    err << "unknown species: " << name << "\n";
    return -1;
  }
  return *idx;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::optional<std::vector<Rational>> parse_x0(const ReactionNetwork& net, const std::string& spec,
                                              std::string* error) {
  std::vector<Rational> x0(net.species_count(), Rational(1));
  if (spec.empty()) return x0;
  size_t pos = 0;
  bool assigned_all = false;
  std::vector<bool> assigned(net.species_count(), false);
  while (pos < spec.size()) {
    size_t comma = spec.find(',', pos);
    if (comma == std::string::npos) comma = spec.size();
    std::string item = spec.substr(pos, comma - pos);
    pos = comma + 1;
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) {
      if (error) *error = "malformed assignment: " + item;
      return std::nullopt;
    }
    std::string name = item.substr(0, eq);
    auto value = parse_rational(item.substr(eq + 1));
    if (!value) {
      if (error) *error = "malformed value in: " + item;
      return std::nullopt;
    }
    if (name == "all") {
      for (int i = 0; i < net.species_count(); ++i)
        if (!assigned[i]) x0[i] = *value;
      assigned_all = true;
      continue;
    }
    auto idx = net.species_index(name);
    if (!idx) {
      if (error) *error = "unknown species in x0: " + name;
      return std::nullopt;
    }
    x0[*idx] = *value;
    assigned[*idx] = true;
  }
  (void)assigned_all;
  for (const auto& v : x0) {
    if (v < 0) {
      if (error) *error = "negative initial concentration";
      return std::nullopt;
    }
  }
  return x0;
}

std::optional<LambdaGrid> parse_lambda_grid(const std::string& spec, std::string* error) {
  double lo = 0, hi = 0;
  long count = 0;
  char c1 = 0, c2 = 0;
  std::istringstream in(spec);
  in >> lo >> c1 >> hi >> c2 >> count;
  // the format is lo:hi:count
  if (!in || c1 != ':' || c2 != ':' || in.peek() != EOF) {
    // retry with strict parsing of "lo:hi:count"
    auto p1 = spec.find(':');
    auto p2 = p1 == std::string::npos ? std::string::npos : spec.find(':', p1 + 1);
    if (p1 == std::string::npos || p2 == std::string::npos) {
      if (error) *error = "lambda grid must be lo:hi:count";
      return std::nullopt;
    }
    try {
      lo = std::stod(spec.substr(0, p1));
      hi = std::stod(spec.substr(p1 + 1, p2 - p1 - 1));
      count = std::stol(spec.substr(p2 + 1));
    } catch (...) {
      if (error) *error = "lambda grid must be lo:hi:count";
      return std::nullopt;
    }
  }
  if (!(lo > 0) || !(hi > lo) || count < 2) {
    if (error) *error = "lambda grid must satisfy 0 < lo < hi and count >= 2";
    return std::nullopt;
  }
  try {
    return LambdaGrid::geometric(lo, hi, static_cast<int>(count));
  } catch (const std::exception& e) {
    if (error) *error = e.what();
    return std::nullopt;
  }
}

namespace {

int cmd_parse(const RunConfig& config, const ReactionNetwork& net, std::ostream& out, std::ostream& err) {
  if (config.format == "json") {
    json j;
    j["schema_version"] = kSchemaVersion;
    json species = json::array();
    for (const auto& s : net.species()) species.push_back(s.name);
    j["species"] = species;
    json reactions = json::array();
    for (const auto& r : net.reactions()) {
      json rj;
      rj["reactant"] = r.reactant.to_string(net.species());
      rj["product"] = r.product.to_string(net.species());
      rj["rate"] = to_string(r.rate.value);
      if (r.rate.name) rj["rate_name"] = *r.rate.name;
      reactions.push_back(rj);
    }
    j["reactions"] = reactions;
    return emit(j.dump(2) + "\n", config.out_path, out, err) ? 0 : 1;
  }
  return emit(serialize(net), config.out_path, out, err) ? 0 : 1;
}

int cmd_laws(const RunConfig& config, const ReactionNetwork& net, std::ostream& out, std::ostream& err) {
  auto basis = kernel_basis(stoichiometric_matrix(net));
  auto rays = positive_laws(basis);
  if (config.format == "json") {
    json j;
    j["schema_version"] = kSchemaVersion;
    json b = json::array();
    for (const auto& law : basis) b.push_back(law_json(net, law));
    json r = json::array();
    for (const auto& law : rays) r.push_back(law_json(net, law));
    j["basis"] = b;
    j["positive_laws"] = r;
    return emit(j.dump(2) + "\n", config.out_path, out, err) ? 0 : 1;
  }
  std::ostringstream text;
  text << "kernel basis (" << basis.size() << " law" << (basis.size() == 1 ? "" : "s") << "):\n";
  for (size_t k = 0; k < basis.size(); ++k) {
    text << "  T" << (k + 1) << " = " << basis[k].to_string(net) << (basis[k].positive ? "   [positive]" : "")
         << "\n";
  }
  text << "positive laws (extreme rays): " << rays.size() << "\n";
  for (const auto& law : rays) {
    text << "  " << law.to_string(net) << "   support {";
    for (size_t i = 0; i < law.support.size(); ++i)
      text << (i ? ", " : "") << net.species_name(law.support[i]);
    text << "}\n";
  }
  return emit(text.str(), config.out_path, out, err) ? 0 : 1;
}

int cmd_steady(const RunConfig& config, const ReactionNetwork& net, std::ostream& out, std::ostream& err) {
  std::string x0err;
  auto x0 = parse_x0(net, config.x0_spec, &x0err);
  if (!x0) {
    err << x0err << "\n";
    return 2;
  }
  ClassifierOptions opts = options_from(config);
  Eigen::VectorXd x0d(net.species_count());
  for (int i = 0; i < net.species_count(); ++i) x0d[i] = to_double((*x0)[i]);
  SteadyState ss = find_steady_state(net, x0d, opts.solver);
  if (config.format == "json") {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["converged"] = ss.converged;
    j["residual"] = ss.residual;
    json xs = json::object();
    for (int i = 0; i < net.species_count(); ++i) xs[net.species_name(i)] = ss.x[i];
    j["x"] = xs;
    if (!emit(j.dump(2) + "\n", config.out_path, out, err)) return 1;
  } else {
    std::ostringstream text;
    for (int i = 0; i < net.species_count(); ++i)
      text << net.species_name(i) << " = " << format_double(ss.x[i]) << "\n";
    text << "residual = " << format_double(ss.residual) << (ss.converged ? "  (converged)" : "  (NOT converged)")
         << "\n";
    if (!emit(text.str(), config.out_path, out, err)) return 1;
  }
  return ss.converged ? 0 : 1;
}

int cmd_sweep(const RunConfig& config, const ReactionNetwork& net, std::ostream& out, std::ostream& err) {
  if (config.input_species.empty() || config.output_species.empty()) {
    err << "sweep requires --input and --output\n";
    return 2;
  }
  int input = resolve_species(net, config.input_species, err);
  int output = resolve_species(net, config.output_species, err);
  if (input < 0 || output < 0) return 2;
  std::string x0err;
  auto x0 = parse_x0(net, config.x0_spec, &x0err);
  if (!x0) {
    err << x0err << "\n";
    return 2;
  }

  ClassifierOptions opts = options_from(config);
  NetworkAnalysis analysis(net, *x0, opts);
  LambdaGrid grid = analysis.grid();
  if (!config.lambda_spec.empty()) {
    std::string gerr;
    auto g = parse_lambda_grid(config.lambda_spec, &gerr);
    if (!g) {
      err << gerr << "\n";
      return 2;
    }
    grid = *g;
  }

  SweepResult sweep = config.jobs == 1
                          ? sweep_serial(analysis.problem(), analysis.x0_double(), input, grid, opts.solver)
                          : sweep_parallel(analysis.problem(), analysis.x0_double(), input, grid, opts.solver,
                                           config.jobs);
  DoseResponseCurve curve = curve_from_sweep(sweep, output);

  std::ostringstream csv;
  csv << "lambda,value,residual,converged\n";
  for (size_t k = 0; k < curve.lambdas.size(); ++k) {
    csv << format_double(curve.lambdas[k]) << "," << format_double(curve.values[k]) << ","
        << format_double(curve.residuals[k]) << "," << (curve.converged[k] ? 1 : 0) << "\n";
  }
  std::string primary_path = !config.csv_path.empty() ? config.csv_path : config.out_path;
  if (!emit(csv.str(), primary_path, out, err)) return 1;

  if (!config.plot_path.empty()) {
    Classification cls = analysis.classify_pair(input, output);
    if (!atomic_write(config.plot_path, plot_data_csv(curve, cls), err)) return 1;
  }
  return curve.converged_count() > 0 ? 0 : 1;
}

int cmd_certify(const RunConfig& config, const ReactionNetwork& net, std::ostream& out, std::ostream& err) {
  if (config.input_species.empty() || config.output_species.empty()) {
    err << "certify requires --input and --output\n";
    return 2;
  }
  int input = resolve_species(net, config.input_species, err);
  int output = resolve_species(net, config.output_species, err);
  if (input < 0 || output < 0) return 2;
  std::string x0err;
  auto x0 = parse_x0(net, config.x0_spec, &x0err);
  if (!x0) {
    err << x0err << "\n";
    return 2;
  }

  NetworkAnalysis analysis(net, *x0, options_from(config));
  auto cert = analysis.certify_pair(input, output);
  const SymbolicSystem& sys = analysis.system();
  auto names = sys.var_names();
  names[sys.species_var(output)] = "x";

  json j;
  j["schema_version"] = kSchemaVersion;
  j["input"] = config.input_species;
  j["output"] = config.output_species;
  j["well_defined"] = cert.well_defined;
  if (cert.elimination) j["P"] = cert.elimination->projection.to_string(names);
  if (cert.specialized) {
    j["P_specialized"] = cert.specialized->specialized.to_string(names);
    j["q"] = cert.specialized->leading.to_string("x");
    j["m_deg"] = cert.specialized->lambda_degree;
    json totals = json::array();
    for (const auto& t : cert.specialized->base_totals) totals.push_back(to_string(t));
    j["base_totals"] = totals;
  }
  if (cert.certificate) {
    json roots = json::array();
    for (const auto& r : cert.certificate->roots.nonneg_roots) roots.push_back(r.to_string());
    j["roots"] = roots;
    j["certificate"] = to_string(cert.certificate->kind);
    if (!cert.certificate->notes.empty()) j["certificate_notes"] = cert.certificate->notes;
  }
  j["verdict"] = classification_json(cert.classification);
  if (cert.classification.limit) j["exact_limit"] = cert.classification.limit->to_string();
  j["numeric_verdict"] = to_string(cert.verdict.kind);
  if (cert.verdict.limit_estimate) j["numeric_limit_estimate"] = *cert.verdict.limit_estimate;

  if (config.format == "json") {
    return emit(j.dump(2) + "\n", config.out_path, out, err) ? 0 : 1;
  }
  std::ostringstream text;
  text << "pair: input " << config.input_species << " -> output " << config.output_species << "\n";
  if (cert.elimination) text << "P(x, T) = " << cert.elimination->projection.to_string(names) << "\n";
  if (cert.specialized) {
    text << "q(x) = " << cert.specialized->leading.to_string("x") << "   (lambda degree "
         << cert.specialized->lambda_degree << ")\n";
  }
  if (cert.certificate) {
    text << "nonnegative roots:";
    for (const auto& r : cert.certificate->roots.nonneg_roots) text << " " << r.to_string();
    text << "\ncertificate: " << to_string(cert.certificate->kind) << "\n";
  }
  text << "classification: " << to_string(cert.classification.kind);
  if (cert.classification.limit) text << ", limit = " << cert.classification.limit->to_string();
  text << "  [" << to_string(cert.classification.provenance) << "]\n";
  if (!cert.classification.notes.empty()) text << "notes: " << cert.classification.notes << "\n";
  return emit(text.str(), config.out_path, out, err) ? 0 : 1;
}

int cmd_table(const RunConfig& config, const ReactionNetwork& net, std::ostream& out, std::ostream& err) {
  std::string x0err;
  auto x0 = parse_x0(net, config.x0_spec, &x0err);
  if (!x0) {
    err << x0err << "\n";
    return 2;
  }
  ClassifierOptions opts = options_from(config);

  struct Instance {
    std::string name;
    ReactionNetwork net;
  };
  std::vector<Instance> instances;
  if (!config.instances_path.empty()) {
    auto text = read_file(config.instances_path);
    if (!text) {
      err << "cannot read " << config.instances_path << "\n";
      return 2;
    }
    json spec;
    try {
      spec = json::parse(*text);
      for (const auto& item : spec) {
        std::map<std::string, Rational> overrides;
        for (auto it = item.at("params").begin(); it != item.at("params").end(); ++it) {
          auto v = parse_rational(it.value().get<std::string>());
          if (!v) throw std::runtime_error("bad rational for " + it.key());
          overrides[it.key()] = *v;
        }
        instances.push_back({item.at("name").get<std::string>(), with_parameters(net, overrides)});
      }
    } catch (const std::exception& e) {
      err << "bad instances file: " << e.what() << "\n";
      return 2;
    }
  } else {
    instances.push_back({"default", net});
  }

  std::vector<ClassificationTable> tables;
  for (const auto& inst : instances) tables.push_back(build_table(inst.net, *x0, opts));

  if (config.format == "json") {
    json j;
    j["schema_version"] = kSchemaVersion;
    json arr = json::array();
    for (size_t k = 0; k < instances.size(); ++k) {
      json t = table_json(tables[k]);
      t["instance"] = instances[k].name;
      arr.push_back(t);
    }
    j["tables"] = arr;
    return emit(j.dump(2) + "\n", config.out_path, out, err) ? 0 : 1;
  }
  if (config.format == "csv") {
    std::ostringstream text;
    for (size_t k = 0; k < instances.size(); ++k) {
      if (instances.size() > 1) text << "# instance=" << instances[k].name << "\n";
      text << table_csv(tables[k]);
    }
    return emit(text.str(), config.out_path, out, err) ? 0 : 1;
  }
  std::ostringstream text;
  for (size_t k = 0; k < instances.size(); ++k) {
    if (instances.size() > 1) text << "instance: " << instances[k].name << "\n";
    text << table_text(tables[k]);
    if (k > 0) {
      int changed = 0;
      std::ostringstream diff;
      for (int i = 0; i < tables[k].size(); ++i) {
        for (int jx = 0; jx < tables[k].size(); ++jx) {
          if (tables[k].at(i, jx).kind != tables[0].at(i, jx).kind) {
            ++changed;
            diff << "  (" << tables[k].species[i] << ", " << tables[k].species[jx]
                 << "): " << to_string(tables[0].at(i, jx).kind) << " -> "
                 << to_string(tables[k].at(i, jx).kind) << "\n";
          }
        }
      }
      text << "cells changed vs " << instances[0].name << ": " << changed << "\n" << diff.str();
    }
    if (k + 1 < instances.size()) text << "\n";
  }
  return emit(text.str(), config.out_path, out, err) ? 0 : 1;
}

int cmd_check(const RunConfig& config, const ReactionNetwork& net, std::ostream& out, std::ostream& err) {
  std::string x0err;
  auto x0 = parse_x0(net, config.x0_spec, &x0err);
  if (!x0) {
    err << x0err << "\n";
    return 2;
  }
  ClassifierOptions opts = options_from(config);
  std::ostringstream text;
  text << "species: " << net.species_count() << ", reactions: " << net.reaction_count() << "\n";
  auto basis = kernel_basis(stoichiometric_matrix(net));
  auto rays = positive_laws(basis);
  text << "conservation laws: " << basis.size() << " (" << rays.size() << " positive)\n";

  SteadyStateProblem prob = SteadyStateProblem::build(net, basis);
  Eigen::VectorXd x0d(net.species_count());
  for (int i = 0; i < net.species_count(); ++i) x0d[i] = to_double((*x0)[i]);

  bool ok = true;
  SteadyState ss = find_steady_state(prob, x0d, opts.solver);
  text << "steady state from x0: " << (ss.converged ? "converged" : "NOT converged") << " (residual "
       << format_double(ss.residual) << ")\n";
  ok = ok && ss.converged;
  // conservation drift
  Eigen::VectorXd t0 = prob.law_matrix * x0d;
  Eigen::VectorXd t1 = prob.law_matrix * ss.x;
  double drift = (t1 - t0).lpNorm<Eigen::Infinity>() / std::max(1.0, t0.lpNorm<Eigen::Infinity>());
  text << "conservation drift: " << format_double(drift) << "\n";
  ok = ok && drift < 1e-9;

  double scale = std::max(1.0, x0d.maxCoeff());
  for (int i = 0; i < net.species_count(); ++i) {
    std::string warn;
    bool wd = check_well_defined(prob, x0d, i, 100.0 * scale, 2, opts.solver, &warn);
    text << "well-defined probe, input " << net.species_name(i) << ": " << (wd ? "ok" : "FAILED " + warn)
         << "\n";
    ok = ok && wd;
  }
  text << (ok ? "check passed\n" : "check FAILED\n");
  if (!emit(text.str(), config.out_path, out, err)) return 1;
  return ok ? 0 : 1;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  auto text = read_file(config.network_path);
  if (!text) {
    err << "cannot read network file: " << config.network_path << "\n";
    return 2;
  }
  ParseResult parsed = parse_network(*text, config.network_path);
  for (const auto& d : parsed.diagnostics) err << config.network_path << ":" << d.to_string() << "\n";
  if (!parsed.ok()) return 2;
  const ReactionNetwork& net = *parsed.network;

  try {
    switch (config.command) {
      case Command::Parse: return cmd_parse(config, net, out, err);
      case Command::Laws: return cmd_laws(config, net, out, err);
      case Command::Steady: return cmd_steady(config, net, out, err);
      case Command::Sweep: return cmd_sweep(config, net, out, err);
      case Command::Certify: return cmd_certify(config, net, out, err);
      case Command::Table: return cmd_table(config, net, out, err);
      case Command::Check: return cmd_check(config, net, out, err);
    }
  } catch (const std::exception& e) {
    err << "analysis failed: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace crnrob::cli
