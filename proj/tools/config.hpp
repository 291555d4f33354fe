#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "ottone/cycle.hpp"
#include "ottone/optimize.hpp"

namespace ottone::cli {

using nlohmann::json;

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

enum class SweepAxis { Omega2, Beta2, Lambda, Epsilon, Phi, TauProtocol };

struct SweepConfig {
  SweepAxis axis = SweepAxis::Omega2;
  double from = 0.0;
  double to = 0.0;
  long count = 0;
};

struct OptimizeConfig {
  double bracket_lo = 0.0;  // 0 = default
  double bracket_hi = 0.0;
  double tolerance = 1e-10;
  WorkObjective objective = WorkObjective::HighT;
};

struct ValidateConfig {
  long samples = 1000;
  std::uint64_t seed = 0;
};

/// Parsed run configuration: the cycle spec plus command-specific blocks.
struct RunConfig {
  CycleSpec spec;
  double tolerance = 1e-10;
  std::optional<SweepConfig> sweep;
  std::optional<OptimizeConfig> optimize;
  std::optional<ValidateConfig> validate;
};

/// Parses and schema-checks a config document. Unknown keys are rejected.
RunConfig parse_config(const json& doc);

json reservoir_to_json(const ReservoirSpec& res);
json cycle_spec_to_json(const CycleSpec& spec);

}  // namespace ottone::cli
