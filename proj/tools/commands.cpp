#include "commands.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <thread>
#include <vector>

#include "ottone/ottone.hpp"

namespace ottone::cli {

namespace {

int log_level() {
  static const int level = [] {
    const char* env = std::getenv("OTTO_NE_LOG");
    if (!env) return 1;  // warn
    const std::string s = env;
    if (s == "error") return 0;
    if (s == "warn") return 1;
    if (s == "info") return 2;
    if (s == "debug") return 3;
    return 1;
  }();
  return level;
}

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    out += c;
    if (c == '"') out += '"';
  }
  out += '"';
  return out;
}

json finite_or_null(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

json check_to_json(const CheckStats& c) {
  return {{"checked", c.checked}, {"failed", c.failed},
          {"worst_margin", finite_or_null(c.worst_margin)}};
}

json cycle_result_to_json(const CycleResult& r) {
  return {{"E_A", r.E_A},
          {"E_B", r.E_B},
          {"E_C", r.E_C},
          {"E_D", r.E_D},
          {"W1", r.W1},
          {"W3", r.W3},
          {"Q2", r.Q2},
          {"Q4", r.Q4},
          {"W_total", r.W_total},
          {"efficiency", r.efficiency},
          {"power", r.power},
          {"q_star_1", r.q_star_1},
          {"q_star_2", r.q_star_2},
          {"is_engine", r.is_engine}};
}

json second_law_to_json(const SecondLawReport& rep) {
  return {{"entropy_production", rep.entropy_production},
          {"inequality_margin", rep.inequality_margin},
          {"eta", rep.eta},
          {"eta_max", rep.eta_max},
          {"T1_eff", rep.T1_eff},
          {"T2_eff", rep.T2_eff},
          {"clausius_ok", rep.clausius_ok}};
}

void print_doc(const json& doc) { std::cout << doc.dump(2) << "\n"; }

/// One evaluated sweep grid point; on failure only `value` and `error` are set.
struct SweepRow {
  double value = 0.0;
  CycleResult cycle;
  double eta_max = 0.0;
  double T1_eff = 0.0;
  double T2_eff = 0.0;
  bool ok = false;
  std::string error;
};

CycleSpec spec_at(const RunConfig& cfg, SweepAxis axis, double v) {
  CycleSpec spec = cfg.spec;
  switch (axis) {
    case SweepAxis::Omega2:
      spec.omega2 = v;
      spec.compression.omega_end = v;
      spec.expansion.omega_start = v;
      break;
    case SweepAxis::Beta2:
      spec.hot.beta = v;
      break;
    case SweepAxis::Lambda:
      std::get<CorrelatedPair>(spec.hot.deviation).lambda = v;
      break;
    case SweepAxis::Epsilon:
      std::get<Coherent>(spec.hot.deviation).epsilon = v;
      break;
    case SweepAxis::Phi:
      std::get<Coherent>(spec.hot.deviation).phi = v;
      break;
    case SweepAxis::TauProtocol:
      spec.compression.duration = v;
      spec.expansion.duration = v;
      break;
  }
  return spec;
}

void check_sweep_axis(const RunConfig& cfg, SweepAxis axis) {
  switch (axis) {
    case SweepAxis::Omega2:
      if (cfg.spec.compression.kind == ProtocolKind::Tabulated ||
          cfg.spec.expansion.kind == ProtocolKind::Tabulated)
        throw ConfigError("sweep over omega2 cannot retarget tabulated protocols");
      break;
    case SweepAxis::Lambda:
      if (!std::holds_alternative<CorrelatedPair>(cfg.spec.hot.deviation))
        throw ConfigError("lambda sweep requires a correlated-pair hot reservoir");
      break;
    case SweepAxis::Epsilon:
    case SweepAxis::Phi:
      if (!std::holds_alternative<Coherent>(cfg.spec.hot.deviation))
        throw ConfigError("epsilon/phi sweeps require a coherent hot reservoir");
      break;
    case SweepAxis::TauProtocol:
      if (!cfg.spec.compression.requires_integration() ||
          !cfg.spec.expansion.requires_integration())
        throw ConfigError("tau_protocol sweep requires integrable stroke protocols");
      break;
    default:
      break;
  }
}

SweepRow evaluate_row(const RunConfig& cfg, SweepAxis axis, double v, double tol) {
  SweepRow row;
  row.value = v;
  try {
    const CycleSpec spec = spec_at(cfg, axis, v);
    row.cycle = evaluate_cycle(spec, tol);
    const auto dev = deviation_energies(spec);
    row.eta_max = max_efficiency(spec.cold.beta, spec.hot.beta, dev.dH_A, dev.dH_C, spec.omega1,
                                 spec.omega2)
                      .value;
    row.T1_eff = effective_temperature(spec.cold, spec.omega1, spec.conv).value;
    row.T2_eff = effective_temperature(spec.hot, spec.omega2, spec.conv).value;
    row.ok = true;
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

const char* const kSweepColumns[] = {"value",      "E_A",   "E_B",       "E_C",      "E_D",
                                     "W1",         "W3",    "Q2",        "Q4",       "W_total",
                                     "efficiency", "power", "q_star_1",  "q_star_2", "is_engine",
                                     "eta_max",    "T1_eff", "T2_eff",   "error"};

void print_sweep_csv(const std::vector<SweepRow>& rows) {
  std::string header;
  for (const char* col : kSweepColumns) {
    if (!header.empty()) header += ',';
    header += col;
  }
  std::cout << header << "\n";
  for (const auto& row : rows) {
    std::string line = fmt17(row.value);
    auto add = [&line](const std::string& cell) { line += ',' + cell; };
    if (row.ok) {
      const auto& r = row.cycle;
      for (double x : {r.E_A, r.E_B, r.E_C, r.E_D, r.W1, r.W3, r.Q2, r.Q4, r.W_total,
                       r.efficiency, r.power, r.q_star_1, r.q_star_2})
        add(fmt17(x));
      add(r.is_engine ? "1" : "0");
      add(fmt17(row.eta_max));
      add(fmt17(row.T1_eff));
      add(fmt17(row.T2_eff));
      add("");
    } else {
      for (int i = 0; i < 17; ++i) add("");
      add(csv_escape(row.error));
    }
    std::cout << line << "\n";
  }
}

void print_sweep_json(const std::vector<SweepRow>& rows) {
  json arr = json::array();
  for (const auto& row : rows) {
    json obj;
    obj["value"] = row.value;
    if (row.ok) {
      obj["cycle"] = cycle_result_to_json(row.cycle);
      obj["eta_max"] = row.eta_max;
      obj["T1_eff"] = row.T1_eff;
      obj["T2_eff"] = row.T2_eff;
    } else {
      obj["error"] = row.error;
    }
    arr.push_back(std::move(obj));
  }
  print_doc(arr);
}

}  // namespace

void log_message(const std::string& level, const std::string& msg) {
  static const char* names[] = {"error", "warn", "info", "debug"};
  int rank = 1;
  for (int i = 0; i < 4; ++i)
    if (level == names[i]) rank = i;
  if (rank <= log_level()) std::cerr << "[ottone] " << level << ": " << msg << "\n";
}

int emit_error(const std::string& type, const std::string& what, int code) {
  print_doc(json{{"error", {{"type", type}, {"what", what}}}});
  log_message("error", what);
  return code;
}

int cmd_cycle(const RunConfig& cfg, const GlobalFlags& flags) {
  const double tol = flags.tol.value_or(cfg.tolerance);
  const auto cycle = evaluate_cycle(cfg.spec, tol);
  const auto second_law = second_law_report(cfg.spec, tol);

  json warnings = json::array();
  for (const auto& [name, res, omega] :
       {std::tuple{"cold", cfg.spec.cold, cfg.spec.omega1},
        std::tuple{"hot", cfg.spec.hot, cfg.spec.omega2}}) {
    const auto regime = regime_check(res, omega, cfg.spec.conv);
    if (!regime.high_temperature)
      warnings.push_back(std::string(name) + " reservoir outside the high-temperature regime");
    if (regime.weak_correlation && !*regime.weak_correlation)
      warnings.push_back(std::string(name) + " reservoir outside the weak-correlation regime");
  }
  if (!warnings.empty()) log_message("warn", "regime warnings present; see output");

  print_doc(json{{"cycle", cycle_result_to_json(cycle)},
                 {"second_law", second_law_to_json(second_law)},
                 {"warnings", warnings}});
  return 0;
}

int cmd_qstar(const QstarFlags& flags) {
  FrequencyProtocol protocol;
  if (flags.protocol == "sudden")
    protocol = FrequencyProtocol::sudden(flags.w1, flags.w2);
  else if (flags.protocol == "adiabatic")
    protocol = FrequencyProtocol::adiabatic(flags.w1, flags.w2);
  else if (flags.protocol == "linear")
    protocol = FrequencyProtocol::linear(flags.w1, flags.w2, flags.tau);
  else if (flags.protocol == "smoothstep")
    protocol = FrequencyProtocol::smoothstep(flags.w1, flags.w2, flags.tau);
  else
    throw ConfigError("--protocol: expected sudden, adiabatic, linear or smoothstep");
  if (flags.tol <= 0.0) throw ConfigError("--tol: must be positive");

  const auto result = adiabaticity_Q(protocol, flags.tol);
  json out;
  out["q_star"] = result.q_star;
  out["method"] = result.method == QStarMethod::ClosedForm ? "closed_form" : "ode";
  out["error_estimate"] = result.error_estimate;
  if (protocol.requires_integration() && protocol.duration > 0.0)
    out["wronskian_drift"] = solve_classical_pair(protocol, flags.tol).wronskian_drift;
  else
    out["wronskian_drift"] = 0.0;
  print_doc(out);
  return 0;
}

int cmd_sweep(const RunConfig& cfg, const GlobalFlags& flags) {
  if (!cfg.sweep) throw ConfigError("sweep command requires a \"sweep\" config block");
  if (!flags.format.empty() && flags.format != "csv" && flags.format != "json")
    throw ConfigError("--format: expected json or csv");
  const SweepConfig& sw = *cfg.sweep;
  check_sweep_axis(cfg, sw.axis);
  const double tol = flags.tol.value_or(cfg.tolerance);

  std::vector<SweepRow> rows(sw.count);
  const int jobs = std::max(1, flags.jobs);
  log_message("info", "sweep: " + std::to_string(sw.count) + " points, " + std::to_string(jobs) +
                          " jobs");
  auto value_at = [&sw](long i) {
    return sw.from + (sw.to - sw.from) * static_cast<double>(i) / (sw.count - 1);
  };
  if (jobs == 1) {
    for (long i = 0; i < sw.count; ++i) rows[i] = evaluate_row(cfg, sw.axis, value_at(i), tol);
  } else {
    std::atomic<long> next{0};
    auto worker = [&] {
      for (long i = next.fetch_add(1); i < sw.count; i = next.fetch_add(1))
        rows[i] = evaluate_row(cfg, sw.axis, value_at(i), tol);
    };
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  if (flags.format == "json")
    print_sweep_json(rows);
  else
    print_sweep_csv(rows);
  return 0;
}

int cmd_optimize_power(const RunConfig& cfg, const GlobalFlags& flags) {
  const OptimizeConfig opt = cfg.optimize.value_or(OptimizeConfig{});
  PowerProblem problem;
  problem.omega1 = cfg.spec.omega1;
  problem.beta1 = cfg.spec.cold.beta;
  problem.beta2 = cfg.spec.hot.beta;
  problem.hot_deviation = cfg.spec.hot.deviation;
  problem.cycle_time = cfg.spec.cycle_time;
  problem.conv = cfg.spec.conv;
  problem.bracket_lo = opt.bracket_lo;
  problem.bracket_hi = opt.bracket_hi;
  problem.objective = opt.objective;
  if (!std::holds_alternative<Thermal>(cfg.spec.cold.deviation))
    throw ConfigError("optimize-power assumes a thermal cold reservoir");

  const auto rep = maximize_power(problem, flags.tol.value_or(opt.tolerance));
  print_doc(json{{"omega2_star", rep.omega2_star},
                 {"eta_at_max_power", rep.eta_at_max_power},
                 {"eta_analytic", finite_or_null(rep.eta_analytic)},
                 {"eta_curzon_ahlborn", rep.eta_curzon_ahlborn},
                 {"discrepancy", finite_or_null(rep.discrepancy)},
                 {"max_power", rep.max_power}});
  return 0;
}

int cmd_validate(const RunConfig& cfg, const GlobalFlags& flags) {
  ValidateConfig val = cfg.validate.value_or(ValidateConfig{});
  if (flags.seed) val.seed = *flags.seed;
  log_message("info", "validate: " + std::to_string(val.samples) + " samples, seed " +
                          std::to_string(val.seed));
  const auto sum = run_validation(val.seed, val.samples);

  json out;
  out["samples"] = sum.samples;
  out["seed"] = val.seed;
  out["checks"] = {{"first_law", check_to_json(sum.first_law)},
                   {"klein", check_to_json(sum.klein)},
                   {"second_law_inequality", check_to_json(sum.second_law_ineq)},
                   {"eta_bound", check_to_json(sum.eta_bound)},
                   {"clausius", check_to_json(sum.clausius)},
                   {"window_consistency", check_to_json(sum.window_consistency)}};
  out["regime_warnings"] = sum.regime_warnings;
  out["all_passed"] = sum.all_passed();
  out["failed_samples"] = sum.failed_samples;
  if (!sum.all_passed()) {
    const CounterRng rng(val.seed);
    json specs = json::array();
    for (std::size_t i = 0; i < sum.failed_samples.size() && i < 10; ++i) {
      json entry = cycle_spec_to_json(sample_cycle_spec(rng, sum.failed_samples[i]));
      entry["sample"] = sum.failed_samples[i];
      specs.push_back(std::move(entry));
    }
    out["failed_specs"] = std::move(specs);
  }
  print_doc(out);
  return sum.all_passed() ? 0 : 4;
}

}  // namespace ottone::cli
