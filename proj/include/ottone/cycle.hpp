#pragma once

#include <cmath>
#include <sstream>

#include "ottone/conventions.hpp"
#include "ottone/protocol.hpp"
#include "ottone/reservoir.hpp"

namespace ottone {

/// Four-stroke Otto cycle: cold isochore at omega1, compression omega1->omega2,
/// hot isochore at omega2, expansion omega2->omega1.
struct CycleSpec {
  ReservoirSpec cold;  // attached at omega1
  ReservoirSpec hot;   // attached at omega2
  double omega1 = 1.0;
  double omega2 = 2.0;
  FrequencyProtocol compression = FrequencyProtocol::adiabatic(1.0, 2.0);
  FrequencyProtocol expansion = FrequencyProtocol::adiabatic(2.0, 1.0);
  double cycle_time = 1.0;
  Conventions conv = {};

  void validate() const {
    conv.validate();
    cold.validate();
    hot.validate();
    if (!(omega1 > 0.0) || !(omega2 > 0.0))
      throw std::invalid_argument("CycleSpec: frequencies must be positive");
    compression.validate();
    expansion.validate();
    auto match = [](double a, double b) {
      return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b));
    };
    if (!match(compression.omega_start, omega1) || !match(compression.omega_end, omega2))
      throw std::invalid_argument("CycleSpec: compression endpoints must be (omega1, omega2)");
    if (!match(expansion.omega_start, omega2) || !match(expansion.omega_end, omega1))
      throw std::invalid_argument("CycleSpec: expansion endpoints must be (omega2, omega1)");
  }

  static CycleSpec adiabatic_thermal(double w1, double w2, double beta1, double beta2,
                                     double tau = 1.0, Conventions conv = {}) {
    CycleSpec s;
    s.cold = {beta1, Thermal{}};
    s.hot = {beta2, Thermal{}};
    s.omega1 = w1;
    s.omega2 = w2;
    s.compression = FrequencyProtocol::adiabatic(w1, w2);
    s.expansion = FrequencyProtocol::adiabatic(w2, w1);
    s.cycle_time = tau;
    s.conv = conv;
    return s;
  }
};

struct CornerEnergies {
  double E_A = 0.0, E_B = 0.0, E_C = 0.0, E_D = 0.0;
};

struct CycleResult {
  double E_A = 0.0, E_B = 0.0, E_C = 0.0, E_D = 0.0;
  double W1 = 0.0, W3 = 0.0;  // energy change of the medium on strokes 1 and 3
  double Q2 = 0.0, Q4 = 0.0;
  double W_total = 0.0;  // work delivered, -(W1 + W3)
  double efficiency = 0.0;
  double power = 0.0;
  double q_star_1 = 1.0, q_star_2 = 1.0;
  bool is_engine = false;
};

namespace detail {

struct CycleInputs {
  double N1 = 0.0;  // n1 + dn1 + 1/2
  double N2 = 0.0;  // n2 + dn2 + 1/2
  double q1 = 1.0, q2 = 1.0;
};

inline CycleInputs cycle_inputs(const CycleSpec& spec, double tolerance) {
  CycleInputs in;
  in.N1 = total_occupation(spec.cold, spec.omega1, spec.conv) + 0.5;
  in.N2 = total_occupation(spec.hot, spec.omega2, spec.conv) + 0.5;
  in.q1 = adiabaticity_Q(spec.compression, tolerance).q_star;
  in.q2 = adiabaticity_Q(spec.expansion, tolerance).q_star;
  return in;
}

}  // namespace detail

inline CornerEnergies corner_energies(const CycleSpec& spec, double tolerance = 1e-10) {
  spec.validate();
  const auto in = detail::cycle_inputs(spec, tolerance);
  const double hb = spec.conv.hbar;
  return {hb * spec.omega1 * in.N1, hb * spec.omega2 * in.q1 * in.N1,
          hb * spec.omega2 * in.N2, hb * spec.omega1 * in.q2 * in.N2};
}

inline std::pair<double, double> stroke_works(const CycleSpec& spec, double tolerance = 1e-10) {
  const auto e = corner_energies(spec, tolerance);
  return {e.E_B - e.E_A, e.E_D - e.E_C};
}

inline std::pair<double, double> stroke_heats(const CycleSpec& spec, double tolerance = 1e-10) {
  const auto e = corner_energies(spec, tolerance);
  return {e.E_C - e.E_B, e.E_A - e.E_D};
}

/// Full cycle energetics. The finite-time efficiency is computed both as the
/// work/heat quotient and from the closed form; the two routes must agree.
inline CycleResult evaluate_cycle(const CycleSpec& spec, double tolerance = 1e-10) {
  spec.validate();
  if (!(spec.cycle_time > 0.0))
    throw std::domain_error("evaluate_cycle: cycle_time must be positive");
  const auto in = detail::cycle_inputs(spec, tolerance);
  const double hb = spec.conv.hbar;

  CycleResult r;
  r.q_star_1 = in.q1;
  r.q_star_2 = in.q2;
  r.E_A = hb * spec.omega1 * in.N1;
  r.E_B = hb * spec.omega2 * in.q1 * in.N1;
  r.E_C = hb * spec.omega2 * in.N2;
  r.E_D = hb * spec.omega1 * in.q2 * in.N2;
  r.W1 = r.E_B - r.E_A;
  r.W3 = r.E_D - r.E_C;
  r.Q2 = r.E_C - r.E_B;
  r.Q4 = r.E_A - r.E_D;
  r.W_total = -(r.W1 + r.W3);
  r.power = r.W_total / spec.cycle_time;
  r.is_engine = r.W_total > 0.0 && r.Q2 > 0.0;

  if (r.Q2 == 0.0)
    throw DegenerateCycleError("efficiency undefined: no heat exchanged on the hot isochore");
  const double eta_quotient = r.W_total / r.Q2;
  // Closed form: 1 - (w1/w2) (N1 - q2 N2)/(q1 N1 - N2)
  const double eta_closed =
      1.0 - (spec.omega1 / spec.omega2) * (in.N1 - in.q2 * in.N2) / (in.q1 * in.N1 - in.N2);
  // Cross-check between the two algebraic routes, with a conditioning factor
  // for cycles where Q2 nearly cancels.
  const double kappa =
      std::max({std::abs(r.E_A), std::abs(r.E_B), std::abs(r.E_C), std::abs(r.E_D)}) /
      std::abs(r.Q2);
  if (std::abs(eta_quotient - eta_closed) >
      1e-12 * std::max(1.0, std::abs(eta_quotient)) * std::max(1.0, kappa)) {
    std::ostringstream msg;
    msg << "efficiency route mismatch: quotient " << eta_quotient << " vs closed form "
        << eta_closed;
    throw std::logic_error(msg.str());
  }
  // The closed form factorizes exactly (eta = 1 - w1/w2 when Q* = 1), so it is
  // the better-conditioned route to report.
  r.efficiency = eta_closed;
  return r;
}

struct Efficiency {
  double value = 0.0;
  bool is_engine = false;
};

inline Efficiency efficiency(const CycleSpec& spec, double tolerance = 1e-10) {
  const auto r = evaluate_cycle(spec, tolerance);
  return {r.efficiency, r.is_engine};
}

inline double power(const CycleSpec& spec, double tolerance = 1e-10) {
  if (!(spec.cycle_time > 0.0)) throw std::domain_error("power: cycle_time must be positive");
  const auto [w1, w3] = stroke_works(spec, tolerance);
  return -(w1 + w3) / spec.cycle_time;
}

}  // namespace ottone
