#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "config.hpp"
#include "ottone/ottone.hpp"

namespace {

using namespace ottone;
using namespace ottone::cli;

RunConfig load_config(const std::string& path, bool required) {
  if (path.empty()) {
    if (required) throw ConfigError("this command requires --config PATH (use - for stdin)");
    return parse_config(json::object());
  }
  json doc;
  try {
    if (path == "-") {
      doc = json::parse(std::cin);
    } else {
      std::ifstream in(path);
      if (!in) throw ConfigError("cannot open config file: " + path);
      doc = json::parse(in);
    }
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(doc);
}

constexpr const char* kSweepHelp =
    "Evaluate the cycle over a parameter grid and stream one row per point.\n"
    "CSV columns: value, E_A, E_B, E_C, E_D, W1, W3, Q2, Q4, W_total, efficiency,\n"
    "power, q_star_1, q_star_2, is_engine, eta_max, T1_eff, T2_eff, error.\n"
    "Failed points keep their row, with the numeric cells empty and the error set.";

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum Otto cycle toolkit for engineered-reservoir heat engines"};
  app.require_subcommand(1);

  std::string config_path;
  GlobalFlags flags;
  std::uint64_t seed_value = 0;
  double tol_value = 0.0;
  app.add_option("--config", config_path, "JSON config file (- reads standard input)");
  auto* seed_opt = app.add_option("--seed", seed_value, "RNG seed override for validate");
  auto* tol_opt = app.add_option("--tol", tol_value, "numerical tolerance override");
  app.add_option("--jobs", flags.jobs, "worker threads for sweep evaluation")
      ->check(CLI::PositiveNumber);
  app.add_option("--format", flags.format, "output format for sweep: json or csv");

  auto* cycle = app.add_subcommand("cycle", "Evaluate one cycle and its second-law report");
  auto* qstar = app.add_subcommand("qstar", "Adiabaticity parameter Q* of one stroke");
  auto* sweep = app.add_subcommand("sweep", kSweepHelp);
  auto* optimize = app.add_subcommand("optimize-power", "Maximize power over omega2");
  auto* validate = app.add_subcommand("validate", "Run the seeded invariant battery");
  for (auto* sub : {cycle, qstar, sweep, optimize, validate}) sub->fallthrough();

  QstarFlags qf;
  qstar->add_option("--protocol", qf.protocol, "sudden | adiabatic | linear | smoothstep")
      ->required();
  qstar->add_option("--w1", qf.w1, "start frequency");
  qstar->add_option("--w2", qf.w2, "end frequency");
  qstar->add_option("--tau", qf.tau, "stroke duration");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  if (*seed_opt) flags.seed = seed_value;
  if (*tol_opt) flags.tol = tol_value;

  try {
    if (*qstar) {
      qf.tol = flags.tol.value_or(1e-10);
      return cmd_qstar(qf);
    }
    const bool config_required = *cycle || *sweep || *optimize;
    const RunConfig cfg = load_config(config_path, config_required);
    if (*cycle) return cmd_cycle(cfg, flags);
    if (*sweep) return cmd_sweep(cfg, flags);
    if (*optimize) return cmd_optimize_power(cfg, flags);
    return cmd_validate(cfg, flags);
  } catch (const ConfigError& e) {
    return emit_error("config", e.what(), 2);
  } catch (const std::invalid_argument& e) {
    return emit_error("config", e.what(), 2);
  } catch (const NonphysicalOccupation& e) {
    return emit_error("physics", e.what(), 3);
  } catch (const DegenerateCycleError& e) {
    return emit_error("physics", e.what(), 3);
  } catch (const IntegrationError& e) {
    return emit_error("numerics", e.what(), 3);
  } catch (const NoInteriorMaximum& e) {
    return emit_error("numerics", e.what(), 3);
  } catch (const std::exception& e) {
    return emit_error("physics", e.what(), 3);
  }
}
