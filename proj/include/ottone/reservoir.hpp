#pragma once

#include <cmath>
#include <optional>
#include <sstream>
#include <variant>

#include "ottone/conventions.hpp"
#include "ottone/interp.hpp"

namespace ottone {

/// Mean occupation of a thermal oscillator, 1/(exp(hbar*beta*omega) - 1).
/// Underflows to exact 0 for large beta*omega.
inline double mean_occupation(double beta, double omega, const Conventions& conv = {}) {
  conv.validate();
  if (!(beta > 0.0)) throw std::domain_error("mean_occupation: beta must be positive");
  if (!(omega > 0.0)) throw std::domain_error("mean_occupation: omega must be positive");
  const double x = conv.hbar * beta * omega;
  // expm1 keeps precision at small x; at large x the result underflows smoothly.
  return 1.0 / std::expm1(x);
}

enum class PairMode { OneAtom, TwoAtom };

struct Thermal {};

/// Pairwise thermally entangled atom beam; lambda is the interaction strength
/// that created the pair.
struct CorrelatedPair {
  double lambda = 0.0;
  PairMode mode = PairMode::OneAtom;
};

/// Three-level atoms with coherently prepared ground states; epsilon is the
/// coherence amplitude, phi the relative phase.
struct Coherent {
  double epsilon = 0.0;
  double phi = 0.0;
};

/// delta_n(omega) = c * omega^(-p)
struct CustomPowerLaw {
  double c = 0.0;
  double p = 1.0;
};

struct CustomTabulated {
  PchipInterpolant table;  // (omega, delta_n) samples
};

using DeviationModel =
    std::variant<Thermal, CorrelatedPair, Coherent, CustomPowerLaw, CustomTabulated>;

/// A stationary reservoir: inverse temperature plus an occupation-deviation law.
struct ReservoirSpec {
  double beta = 1.0;
  DeviationModel deviation = Thermal{};

  void validate() const {
    if (!(beta > 0.0)) throw std::invalid_argument("ReservoirSpec: beta must be positive");
  }
};

namespace detail {

inline double delta_n_raw(const ReservoirSpec& res, double omega, const Conventions& conv) {
  return std::visit(
      [&](const auto& dev) -> double {
        using T = std::decay_t<decltype(dev)>;
        if constexpr (std::is_same_v<T, Thermal>) {
          return 0.0;
        } else if constexpr (std::is_same_v<T, CorrelatedPair>) {
          if (dev.mode == PairMode::OneAtom)
            return res.beta * conv.hbar * dev.lambda * dev.lambda / (4.0 * omega);
          return -dev.lambda / (2.0 * omega);
        } else if constexpr (std::is_same_v<T, Coherent>) {
          const double s = conv.hbar * res.beta * omega;
          return -dev.epsilon * std::cos(dev.phi) / (s * s);
        } else if constexpr (std::is_same_v<T, CustomPowerLaw>) {
          return dev.c * std::pow(omega, -dev.p);
        } else {
          return dev.table(omega);
        }
      },
      res.deviation);
}

}  // namespace detail

/// Occupation deviation delta_n(omega) for the reservoir's model. Throws
/// NonphysicalOccupation if n_bar + delta_n would be negative.
inline double delta_n(const ReservoirSpec& res, double omega, const Conventions& conv = {}) {
  conv.validate();
  res.validate();
  if (!(omega > 0.0)) throw std::domain_error("delta_n: omega must be positive");
  const double dn = detail::delta_n_raw(res, omega, conv);
  const double total = mean_occupation(res.beta, omega, conv) + dn;
  if (total < 0.0) {
    std::ostringstream msg;
    msg << "nonphysical occupation n_bar + delta_n = " << total << " at omega = " << omega;
    throw NonphysicalOccupation(msg.str());
  }
  return dn;
}

/// n_bar + delta_n at the given frequency.
inline double total_occupation(const ReservoirSpec& res, double omega,
                               const Conventions& conv = {}) {
  return mean_occupation(res.beta, omega, conv) + delta_n(res, omega, conv);
}

struct EffectiveTemperature {
  double value = 0.0;             // T + hbar*omega*delta_n / k_B
  double base_temperature = 0.0;  // T = 1/(k_B beta)
  double deviation_energy = 0.0;  // hbar*omega*delta_n
};

inline EffectiveTemperature effective_temperature(const ReservoirSpec& res, double omega,
                                                  const Conventions& conv = {}) {
  conv.validate();
  const double dn = delta_n(res, omega, conv);
  EffectiveTemperature out;
  out.base_temperature = 1.0 / (conv.k_B * res.beta);
  out.deviation_energy = conv.hbar * omega * dn;
  out.value = out.base_temperature + out.deviation_energy / conv.k_B;
  return out;
}

struct RegimeThresholds {
  double high_temperature = 0.1;  // on hbar*beta*omega
  double weak_correlation = 0.1;  // on hbar*beta*lambda
};

struct RegimeReport {
  double beta_omega = 0.0;  // hbar*beta*omega
  bool high_temperature = false;
  std::optional<double> beta_lambda;  // hbar*beta*lambda, correlated-pair only
  std::optional<bool> weak_correlation;
};

/// Diagnostic only: flags whether the reservoir sits inside the regime where
/// the deviation formulas are derived. Never rejects.
inline RegimeReport regime_check(const ReservoirSpec& res, double omega,
                                 const Conventions& conv = {},
                                 const RegimeThresholds& thresholds = {}) {
  conv.validate();
  res.validate();
  if (!(omega > 0.0)) throw std::domain_error("regime_check: omega must be positive");
  RegimeReport rep;
  rep.beta_omega = conv.hbar * res.beta * omega;
  rep.high_temperature = rep.beta_omega < thresholds.high_temperature;
  if (const auto* pair = std::get_if<CorrelatedPair>(&res.deviation)) {
    rep.beta_lambda = conv.hbar * res.beta * pair->lambda;
    rep.weak_correlation = *rep.beta_lambda < thresholds.weak_correlation;
  }
  return rep;
}

}  // namespace ottone
