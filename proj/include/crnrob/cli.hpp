#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "crnrob/classifier.hpp"

namespace crnrob::cli {

enum class Command { Parse, Laws, Steady, Sweep, Certify, Table, Check };

struct RunConfig {
  Command command = Command::Parse;
  std::string network_path;
  std::string x0_spec;  // "all=1" or "X=1,Y=2/3"; empty means all=1
  std::string input_species;
  std::string output_species;
  std::string lambda_spec;  // "lo:hi:count", geometric
  unsigned seed = 20240801;
  int jobs = 1;
  std::string format = "text";  // text | csv | json
  std::string out_path;         // empty writes to stdout
  std::string csv_path;         // sweep: raw curve CSV
  std::string plot_path;        // sweep: plot data with limit/kind annotations
  std::string instances_path;   // table: JSON list of rate-constant instances
  std::optional<double> final_tol, switch_tol;
  std::optional<double> plateau_tol, zero_tol, slope_tol;
};

/// Exit status contract: 0 success, 1 analysis failure, 2 usage or parse
/// errors. All file outputs are written atomically (temp file + rename).
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// "all=1,X=3" style assignment over the network's species; exact rationals.
std::optional<std::vector<Rational>> parse_x0(const ReactionNetwork& net, const std::string& spec,
                                              std::string* error);

std::optional<LambdaGrid> parse_lambda_grid(const std::string& spec, std::string* error);

std::string format_double(double v);

}  // namespace crnrob::cli
