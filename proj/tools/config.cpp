#include "config.hpp"

#include <set>
#include <string>
#include <vector>

namespace ottone::cli {

namespace {

void require_keys(const json& obj, const std::string& where,
                  const std::set<std::string>& allowed,
                  const std::set<std::string>& required) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [key, _] : obj.items())
    if (!allowed.count(key)) throw ConfigError(where + ": unknown key \"" + key + "\"");
  for (const auto& key : required)
    if (!obj.contains(key)) throw ConfigError(where + ": missing key \"" + key + "\"");
}

double num(const json& obj, const std::string& where, const std::string& key) {
  const auto& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(where + "." + key + ": expected a number");
  return v.get<double>();
}

double num_or(const json& obj, const std::string& where, const std::string& key, double dflt) {
  return obj.contains(key) ? num(obj, where, key) : dflt;
}

std::vector<double> num_array(const json& obj, const std::string& where, const std::string& key) {
  const auto& v = obj.at(key);
  if (!v.is_array() || v.empty()) throw ConfigError(where + "." + key + ": expected an array");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) throw ConfigError(where + "." + key + ": expected numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

Conventions parse_conventions(const json& obj) {
  require_keys(obj, "conventions", {"hbar", "k_B", "mass"}, {});
  Conventions conv;
  conv.hbar = num_or(obj, "conventions", "hbar", 1.0);
  conv.k_B = num_or(obj, "conventions", "k_B", 1.0);
  conv.mass = num_or(obj, "conventions", "mass", 1.0);
  return conv;
}

ReservoirSpec parse_reservoir(const json& obj, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  const std::string type = obj.contains("type") ? obj.at("type").get<std::string>() : "thermal";
  ReservoirSpec res;
  if (type == "thermal") {
    require_keys(obj, where, {"type", "beta"}, {"beta"});
    res.deviation = Thermal{};
  } else if (type == "one_atom_pair" || type == "two_atom_pair") {
    require_keys(obj, where, {"type", "beta", "lambda"}, {"beta", "lambda"});
    res.deviation = CorrelatedPair{num(obj, where, "lambda"), type == "one_atom_pair"
                                                                  ? PairMode::OneAtom
                                                                  : PairMode::TwoAtom};
  } else if (type == "coherent") {
    require_keys(obj, where, {"type", "beta", "epsilon", "phi"}, {"beta", "epsilon"});
    res.deviation = Coherent{num(obj, where, "epsilon"), num_or(obj, where, "phi", 0.0)};
  } else if (type == "power_law") {
    require_keys(obj, where, {"type", "beta", "c", "p"}, {"beta", "c"});
    res.deviation = CustomPowerLaw{num(obj, where, "c"), num_or(obj, where, "p", 1.0)};
  } else if (type == "tabulated") {
    require_keys(obj, where, {"type", "beta", "omega", "delta_n"}, {"beta", "omega", "delta_n"});
    try {
      res.deviation = CustomTabulated{
          PchipInterpolant(num_array(obj, where, "omega"), num_array(obj, where, "delta_n"))};
    } catch (const std::invalid_argument& e) {
      throw ConfigError(where + ": " + e.what());
    }
  } else {
    throw ConfigError(where + ": unknown reservoir type \"" + type + "\"");
  }
  res.beta = num(obj, where, "beta");
  return res;
}

FrequencyProtocol parse_protocol(const json& v, const std::string& where, double w_from,
                                 double w_to) {
  std::string kind;
  json obj = json::object();
  if (v.is_string()) {
    kind = v.get<std::string>();
  } else if (v.is_object()) {
    if (!v.contains("kind")) throw ConfigError(where + ": missing key \"kind\"");
    kind = v.at("kind").get<std::string>();
    obj = v;
  } else {
    throw ConfigError(where + ": expected a string or an object");
  }

  try {
    if (kind == "sudden") {
      require_keys(obj, where, {"kind"}, {});
      return FrequencyProtocol::sudden(w_from, w_to);
    }
    if (kind == "adiabatic") {
      require_keys(obj, where, {"kind"}, {});
      return FrequencyProtocol::adiabatic(w_from, w_to);
    }
    if (kind == "linear") {
      require_keys(obj, where, {"kind", "duration"}, {"duration"});
      return FrequencyProtocol::linear(w_from, w_to, num(obj, where, "duration"));
    }
    if (kind == "smoothstep") {
      require_keys(obj, where, {"kind", "duration"}, {"duration"});
      return FrequencyProtocol::smoothstep(w_from, w_to, num(obj, where, "duration"));
    }
    if (kind == "tabulated") {
      require_keys(obj, where, {"kind", "t", "omega"}, {"t", "omega"});
      return FrequencyProtocol::tabulated(num_array(obj, where, "t"),
                                          num_array(obj, where, "omega"));
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(where + ": " + e.what());
  }
  throw ConfigError(where + ": unknown protocol kind \"" + kind + "\"");
}

SweepAxis parse_axis(const std::string& name) {
  if (name == "omega2") return SweepAxis::Omega2;
  if (name == "beta2") return SweepAxis::Beta2;
  if (name == "lambda") return SweepAxis::Lambda;
  if (name == "epsilon") return SweepAxis::Epsilon;
  if (name == "phi") return SweepAxis::Phi;
  if (name == "tau_protocol") return SweepAxis::TauProtocol;
  throw ConfigError("sweep.axis: unknown axis \"" + name + "\"");
}

SweepConfig parse_sweep(const json& obj) {
  require_keys(obj, "sweep", {"axis", "from", "to", "count"}, {"axis", "from", "to", "count"});
  SweepConfig sw;
  sw.axis = parse_axis(obj.at("axis").get<std::string>());
  sw.from = num(obj, "sweep", "from");
  sw.to = num(obj, "sweep", "to");
  if (!obj.at("count").is_number_integer())
    throw ConfigError("sweep.count: expected an integer");
  sw.count = obj.at("count").get<long>();
  if (sw.count < 2) throw ConfigError("sweep.count: need at least 2 grid points");
  return sw;
}

OptimizeConfig parse_optimize(const json& obj) {
  require_keys(obj, "optimize", {"bracket_lo", "bracket_hi", "tolerance", "objective"}, {});
  OptimizeConfig opt;
  opt.bracket_lo = num_or(obj, "optimize", "bracket_lo", 0.0);
  opt.bracket_hi = num_or(obj, "optimize", "bracket_hi", 0.0);
  opt.tolerance = num_or(obj, "optimize", "tolerance", 1e-10);
  if (obj.contains("objective")) {
    const std::string o = obj.at("objective").get<std::string>();
    if (o == "high_t")
      opt.objective = WorkObjective::HighT;
    else if (o == "exact_quantum")
      opt.objective = WorkObjective::ExactQuantum;
    else
      throw ConfigError("optimize.objective: expected \"high_t\" or \"exact_quantum\"");
  }
  return opt;
}

ValidateConfig parse_validate(const json& obj) {
  require_keys(obj, "validate", {"samples", "seed"}, {});
  ValidateConfig val;
  if (obj.contains("samples")) {
    if (!obj.at("samples").is_number_integer())
      throw ConfigError("validate.samples: expected an integer");
    val.samples = obj.at("samples").get<long>();
  }
  if (obj.contains("seed")) {
    if (!obj.at("seed").is_number_integer())
      throw ConfigError("validate.seed: expected an integer");
    val.seed = obj.at("seed").get<std::uint64_t>();
  }
  if (val.samples < 1) throw ConfigError("validate.samples: need at least 1 sample");
  return val;
}

}  // namespace

RunConfig parse_config(const json& doc) {
  require_keys(doc, "config",
               {"conventions", "omega1", "omega2", "cold", "hot", "compression", "expansion",
                "cycle_time", "tolerance", "sweep", "optimize", "validate"},
               {});
  RunConfig cfg;
  if (doc.contains("conventions")) cfg.spec.conv = parse_conventions(doc.at("conventions"));
  cfg.spec.omega1 = num_or(doc, "config", "omega1", 1.0);
  cfg.spec.omega2 = num_or(doc, "config", "omega2", 2.0);
  if (doc.contains("cold")) cfg.spec.cold = parse_reservoir(doc.at("cold"), "cold");
  if (doc.contains("hot")) cfg.spec.hot = parse_reservoir(doc.at("hot"), "hot");
  cfg.spec.compression =
      doc.contains("compression")
          ? parse_protocol(doc.at("compression"), "compression", cfg.spec.omega1, cfg.spec.omega2)
          : FrequencyProtocol::adiabatic(cfg.spec.omega1, cfg.spec.omega2);
  cfg.spec.expansion =
      doc.contains("expansion")
          ? parse_protocol(doc.at("expansion"), "expansion", cfg.spec.omega2, cfg.spec.omega1)
          : FrequencyProtocol::adiabatic(cfg.spec.omega2, cfg.spec.omega1);
  cfg.spec.cycle_time = num_or(doc, "config", "cycle_time", 1.0);
  cfg.tolerance = num_or(doc, "config", "tolerance", 1e-10);
  if (cfg.spec.cycle_time <= 0.0) throw ConfigError("cycle_time: must be positive");
  if (cfg.tolerance <= 0.0) throw ConfigError("tolerance: must be positive");
  if (doc.contains("sweep")) cfg.sweep = parse_sweep(doc.at("sweep"));
  if (doc.contains("optimize")) cfg.optimize = parse_optimize(doc.at("optimize"));
  if (doc.contains("validate")) cfg.validate = parse_validate(doc.at("validate"));
  return cfg;
}

json reservoir_to_json(const ReservoirSpec& res) {
  json out;
  out["beta"] = res.beta;
  std::visit(
      [&](const auto& dev) {
        using T = std::decay_t<decltype(dev)>;
        if constexpr (std::is_same_v<T, Thermal>) {
          out["type"] = "thermal";
        } else if constexpr (std::is_same_v<T, CorrelatedPair>) {
          out["type"] = dev.mode == PairMode::OneAtom ? "one_atom_pair" : "two_atom_pair";
          out["lambda"] = dev.lambda;
        } else if constexpr (std::is_same_v<T, Coherent>) {
          out["type"] = "coherent";
          out["epsilon"] = dev.epsilon;
          out["phi"] = dev.phi;
        } else if constexpr (std::is_same_v<T, CustomPowerLaw>) {
          out["type"] = "power_law";
          out["c"] = dev.c;
          out["p"] = dev.p;
        } else {
          out["type"] = "tabulated";
        }
      },
      res.deviation);
  return out;
}

json cycle_spec_to_json(const CycleSpec& spec) {
  json out;
  out["omega1"] = spec.omega1;
  out["omega2"] = spec.omega2;
  out["cold"] = reservoir_to_json(spec.cold);
  out["hot"] = reservoir_to_json(spec.hot);
  out["cycle_time"] = spec.cycle_time;
  return out;
}

}  // namespace ottone::cli
