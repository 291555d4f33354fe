#pragma once

#include <cmath>
#include <optional>

#include "ottone/conventions.hpp"
#include "ottone/cycle.hpp"
#include "ottone/gaussian.hpp"

namespace ottone {

/// Coefficients of the quadratic mean-force correction, recovered from the
/// hot-corner quadratures in the high-temperature evaluation.
struct MeanForceCoefficients {
  double a = 0.0;  // 1/(beta2 <p^2>_C) - 1/m
  double b = 0.0;  // 1/(beta2 <x^2>_C) - m omega2^2
};

inline MeanForceCoefficients mean_force_coefficients(double beta2, double omega2,
                                                     const GaussianState& state_C,
                                                     const Conventions& conv = {}) {
  conv.validate();
  if (!(beta2 > 0.0)) throw std::domain_error("mean_force_coefficients: beta2 must be positive");
  if (!(state_C.cov.pp > 0.0) || !(state_C.cov.xx > 0.0))
    throw std::domain_error("mean_force_coefficients: quadratures must be positive");
  MeanForceCoefficients out;
  out.a = 1.0 / (beta2 * state_C.cov.pp) - 1.0 / conv.mass;
  out.b = 1.0 / (beta2 * state_C.cov.xx) - conv.mass * omega2 * omega2;
  return out;
}

/// Two readings of the hot-corner deviation, kept apart:
/// dH_* are energy deviations hbar*omega*delta_n (used in efficiency bounds),
/// M_* are mean-force expectations (used in the entropy-production identity,
/// adiabatic strokes only).
struct DeviationEnergies {
  double dH_A = 0.0;  // hbar*omega1*delta_n_1
  double dH_C = 0.0;  // hbar*omega2*delta_n_2
  std::optional<double> M_B;  // k T1 (w2/w1) (T2/T2_eff - 1)
  std::optional<double> M_C;  // k (T2 - T2_eff)
};

inline DeviationEnergies deviation_energies(const CycleSpec& spec) {
  spec.validate();
  DeviationEnergies out;
  out.dH_A = spec.conv.hbar * spec.omega1 * delta_n(spec.cold, spec.omega1, spec.conv);
  out.dH_C = spec.conv.hbar * spec.omega2 * delta_n(spec.hot, spec.omega2, spec.conv);
  const bool adiabatic = spec.compression.kind == ProtocolKind::AdiabaticLimit &&
                         spec.expansion.kind == ProtocolKind::AdiabaticLimit;
  if (adiabatic) {
    const double k = spec.conv.k_B;
    const double T1 = 1.0 / (k * spec.cold.beta);
    const double T2 = 1.0 / (k * spec.hot.beta);
    const double T2_eff = T2 + out.dH_C / k;
    out.M_B = k * T1 * (spec.omega2 / spec.omega1) * (T2 / T2_eff - 1.0);
    out.M_C = k * (T2 - T2_eff);
  }
  return out;
}

/// Reservoir-equilibrated Gaussian states at the four cycle corners.
/// rho_A and rho_C are thermal-like at the reservoir occupations; rho_B and
/// rho_D are their images under the stroke propagators.
struct CornerStates {
  GaussianState A, B, C, D;
};

inline CornerStates corner_states(const CycleSpec& spec, double tolerance = 1e-10) {
  spec.validate();
  CornerStates s;
  s.A = GaussianState::thermal_like(total_occupation(spec.cold, spec.omega1, spec.conv),
                                    spec.omega1, spec.conv);
  s.C = GaussianState::thermal_like(total_occupation(spec.hot, spec.omega2, spec.conv),
                                    spec.omega2, spec.conv);
  s.B = {propagate_covariance(spec.compression, s.A.cov, spec.conv, tolerance), spec.omega2};
  s.D = {propagate_covariance(spec.expansion, s.C.cov, spec.conv, tolerance), spec.omega1};
  return s;
}

/// Entropy production over one cycle, S(rho_B||rho_C) + S(rho_D||rho_A) >= 0.
inline double entropy_production(const CycleSpec& spec, double tolerance = 1e-10) {
  const auto s = corner_states(spec, tolerance);
  return relative_entropy_gaussian(s.B, s.C, spec.conv) +
         relative_entropy_gaussian(s.D, s.A, spec.conv);
}

/// Left side of the effective-temperature second-law inequality,
/// -beta2_eff Q2 - beta1_eff Q4. Non-negative iff the cycle complies.
inline double second_law_margin(double Q2, double Q4, double beta1_eff, double beta2_eff) {
  return -beta2_eff * Q2 - beta1_eff * Q4;
}

struct MaxEfficiency {
  double value = 0.0;             // 1 - beta2_eff/beta1_eff
  double high_t_expansion = 0.0;  // eta_c + beta2 ((w1/w2) dH_C - dH_A)
  double beta1_eff = 0.0;
  double beta2_eff = 0.0;
};

/// Generalized Carnot bound. With dH_A = 0 this is the one-nonthermal-reservoir
/// form 1 - beta2/(beta1 (1 + beta2 dH_C)).
inline MaxEfficiency max_efficiency(double beta1, double beta2, double dH_A, double dH_C,
                                    double omega1, double omega2) {
  if (!(beta1 > 0.0) || !(beta2 > 0.0))
    throw std::domain_error("max_efficiency: inverse temperatures must be positive");
  const double denom2 = 1.0 + beta2 * dH_C;
  const double denom1 = 1.0 + beta1 * dH_A;
  if (!(denom2 > 0.0) || !(denom1 > 0.0))
    throw std::domain_error("max_efficiency: effective inverse temperature not positive");
  MaxEfficiency out;
  out.beta2_eff = beta2 / denom2;
  out.beta1_eff = beta1 / denom1;
  out.value = 1.0 - out.beta2_eff / out.beta1_eff;
  const double eta_c = 1.0 - beta2 / beta1;
  out.high_t_expansion = eta_c + beta2 * ((omega1 / omega2) * dH_C - dH_A);
  return out;
}

struct ClausiusCheck {
  bool ok = true;
  bool applicable = false;  // false when W_total < 0 (not an engine)
  int sign_Q2 = 0;
  int sign_dT = 0;  // sign of T2_eff - T1_eff
};

/// Generalized Clausius direction: with non-negative work output, heat must
/// flow from the higher effective temperature to the lower one.
inline ClausiusCheck clausius_direction(double T1_eff, double T2_eff, double Q2,
                                        double W_total, double tol = 1e-12) {
  ClausiusCheck out;
  auto sgn = [tol](double x) { return x > tol ? 1 : (x < -tol ? -1 : 0); };
  out.sign_Q2 = sgn(Q2);
  out.sign_dT = sgn(T2_eff - T1_eff);
  out.applicable = W_total >= -tol;
  if (!out.applicable) return out;
  // A zero on either side is compatible with any sign of the other.
  out.ok = out.sign_Q2 == 0 || out.sign_dT == 0 || out.sign_Q2 == out.sign_dT;
  return out;
}

struct EngineWindow {
  bool ok = false;
  double ratio_hot = 0.0;   // (n2 + dn2 + 1/2)/(n1 + dn1 + 1/2), compared to Q*_1
  double ratio_cold = 0.0;  // (n1 + dn1 + 1/2)/(n2 + dn2 + 1/2), compared to Q*_2
  bool hot_ok = false;      // ratio_hot >= Q*_1  (Q2 >= 0)
  bool cold_ok = false;     // ratio_cold <= Q*_2 (Q4 <= 0)
};

inline EngineWindow engine_window(const CycleSpec& spec, double tolerance = 1e-10) {
  spec.validate();
  const auto in = detail::cycle_inputs(spec, tolerance);
  EngineWindow out;
  out.ratio_hot = in.N2 / in.N1;
  out.ratio_cold = in.N1 / in.N2;
  out.hot_ok = out.ratio_hot >= in.q1;
  out.cold_ok = out.ratio_cold <= in.q2;
  out.ok = out.hot_ok && out.cold_ok;
  return out;
}

struct SecondLawReport {
  double entropy_production = 0.0;
  double inequality_margin = 0.0;
  double eta = 0.0;
  double eta_max = 0.0;
  double T1_eff = 0.0;
  double T2_eff = 0.0;
  bool clausius_ok = true;
};

/// One-call summary used by the CLI: runs the cycle, the Gaussian entropy
/// production, the effective-temperature inequality and the Clausius check.
inline SecondLawReport second_law_report(const CycleSpec& spec, double tolerance = 1e-10) {
  const auto cycle = evaluate_cycle(spec, tolerance);
  const auto dev = deviation_energies(spec);
  SecondLawReport rep;
  rep.entropy_production = entropy_production(spec, tolerance);
  const auto t1 = effective_temperature(spec.cold, spec.omega1, spec.conv);
  const auto t2 = effective_temperature(spec.hot, spec.omega2, spec.conv);
  rep.T1_eff = t1.value;
  rep.T2_eff = t2.value;
  const auto bound = max_efficiency(spec.cold.beta, spec.hot.beta, dev.dH_A, dev.dH_C,
                                    spec.omega1, spec.omega2);
  rep.eta_max = bound.value;
  rep.eta = cycle.efficiency;
  rep.inequality_margin =
      second_law_margin(cycle.Q2, cycle.Q4, bound.beta1_eff, bound.beta2_eff);
  rep.clausius_ok =
      clausius_direction(rep.T1_eff, rep.T2_eff, cycle.Q2, cycle.W_total).ok;
  return rep;
}

}  // namespace ottone
