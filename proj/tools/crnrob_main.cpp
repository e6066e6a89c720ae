#include <CLI11.hpp>

#include <iostream>

#include "crnrob/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"crnrob - reaction network robustness analyzer"};
  app.require_subcommand(1);

  crnrob::cli::RunConfig config;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("network", config.network_path, "network description (.crn)")->required();
    cmd->add_option("--x0", config.x0_spec, "initial condition, e.g. all=1,X=3 (exact rationals)");
    cmd->add_option("--seed", config.seed, "random seed for reproducible runs");
    cmd->add_option("--jobs", config.jobs, "worker count for sweeps (1 = serial, 0 = all cores)");
    cmd->add_option("--out", config.out_path, "write output to this file (atomic)");
    cmd->add_option("--format", config.format, "output format: text, csv or json")
        ->check(CLI::IsMember({"text", "csv", "json"}));
    cmd->add_flag_callback("--json", [&] { config.format = "json"; }, "shorthand for --format json");
    cmd->add_option("--final-tol", config.final_tol, "steady-state residual tolerance");
    cmd->add_option("--switch-tol", config.switch_tol, "integration-to-Newton handoff tolerance");
    cmd->add_option("--plateau-tol", config.plateau_tol, "plateau detection tolerance");
    cmd->add_option("--zero-tol", config.zero_tol, "extinction threshold");
    cmd->add_option("--slope-tol", config.slope_tol, "divergence slope threshold");
  };

  auto* parse = app.add_subcommand("parse", "validate a network and print its canonical form");
  add_common(parse);
  auto* laws = app.add_subcommand("laws", "conservation laws: kernel basis and positive laws");
  add_common(laws);
  auto* steady = app.add_subcommand("steady", "steady state from an initial condition");
  add_common(steady);
  auto* sweep = app.add_subcommand("sweep", "dose-response sweep over a lambda grid");
  add_common(sweep);
  sweep->add_option("--input", config.input_species, "input species (initial value shifted)")->required();
  sweep->add_option("--output", config.output_species, "output species (steady state reported)")->required();
  sweep->add_option("--lambda", config.lambda_spec, "geometric grid lo:hi:count");
  sweep->add_option("--csv", config.csv_path, "write the curve CSV to this file");
  sweep->add_option("--plot", config.plot_path, "write plot data (with kind/limit annotations)");
  auto* certify = app.add_subcommand("certify", "symbolic aACR certification for one input/output pair");
  add_common(certify);
  certify->add_option("--input", config.input_species, "input species")->required();
  certify->add_option("--output", config.output_species, "output species")->required();
  auto* table = app.add_subcommand("table", "full classification table over all species pairs");
  add_common(table);
  table->add_option("--instances", config.instances_path, "JSON list of rate-constant instances to compare");
  auto* check = app.add_subcommand("check", "well-formedness, conservation and well-definedness probe");
  add_common(check);

  CLI11_PARSE(app, argc, argv);

  if (parse->parsed()) config.command = crnrob::cli::Command::Parse;
  if (laws->parsed()) config.command = crnrob::cli::Command::Laws;
  if (steady->parsed()) config.command = crnrob::cli::Command::Steady;
  if (sweep->parsed()) config.command = crnrob::cli::Command::Sweep;
  if (certify->parsed()) config.command = crnrob::cli::Command::Certify;
  if (table->parsed()) config.command = crnrob::cli::Command::Table;
  if (check->parsed()) config.command = crnrob::cli::Command::Check;

  return crnrob::cli::run(config, std::cout, std::cerr);
}
