#pragma once

#include <stdexcept>
#include <string>

namespace ottone {

/// Unit conventions. Defaults are natural units; all three knobs exist so
/// dimensional audits can run the same formulas with physical constants.
struct Conventions {
  double hbar = 1.0;
  double k_B = 1.0;
  double mass = 1.0;

  void validate() const {
    if (!(hbar > 0.0) || !(k_B > 0.0) || !(mass > 0.0))
      throw std::invalid_argument("Conventions: hbar, k_B and mass must be positive");
  }
};

struct NonphysicalOccupation : std::runtime_error {
  explicit NonphysicalOccupation(const std::string& what) : std::runtime_error(what) {}
};

struct IntegrationError : std::runtime_error {
  explicit IntegrationError(const std::string& what) : std::runtime_error(what) {}
};

struct DegenerateCycleError : std::runtime_error {
  explicit DegenerateCycleError(const std::string& what) : std::runtime_error(what) {}
};

struct NoInteriorMaximum : std::runtime_error {
  explicit NoInteriorMaximum(const std::string& what) : std::runtime_error(what) {}
};

struct InsufficientCutoff : std::runtime_error {
  explicit InsufficientCutoff(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ottone
