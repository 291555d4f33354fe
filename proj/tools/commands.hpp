#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "config.hpp"

namespace ottone::cli {

/// Flag overrides applied on top of the config document.
struct GlobalFlags {
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  int jobs = 1;
  std::string format;  // "", "json" or "csv"
};

struct QstarFlags {
  std::string protocol = "linear";
  double w1 = 1.0;
  double w2 = 2.0;
  double tau = 1.0;
  double tol = 1e-10;
};

int cmd_cycle(const RunConfig& cfg, const GlobalFlags& flags);
int cmd_qstar(const QstarFlags& flags);
int cmd_sweep(const RunConfig& cfg, const GlobalFlags& flags);
int cmd_optimize_power(const RunConfig& cfg, const GlobalFlags& flags);
int cmd_validate(const RunConfig& cfg, const GlobalFlags& flags);

/// Serializes an error as {"error": {...}} on stdout and returns the exit code.
int emit_error(const std::string& type, const std::string& what, int code);

void log_message(const std::string& level, const std::string& msg);

}  // namespace ottone::cli
