#pragma once

#include <cmath>
#include <functional>
#include <limits>

#include "ottone/conventions.hpp"
#include "ottone/cycle.hpp"
#include "ottone/reservoir.hpp"

namespace ottone {

/// High-temperature closed-form work produced per cycle with adiabatic
/// strokes; exact in the limit n+1/2 -> 1/(hbar beta omega).
inline double total_work_highT(double omega1, double omega2, double beta1, double beta2,
                               const DeviationModel& hot_deviation, const Conventions& conv = {}) {
  conv.validate();
  if (!(omega1 > 0.0) || !(omega2 > 0.0))
    throw std::domain_error("total_work_highT: frequencies must be positive");
  if (!(beta1 > 0.0) || !(beta2 > 0.0))
    throw std::domain_error("total_work_highT: inverse temperatures must be positive");
  ReservoirSpec hot{beta2, hot_deviation};
  const double dn = detail::delta_n_raw(hot, omega2, conv);
  // W = (1/beta2 + hbar w2 dn)(1 - w1/w2) - (1/beta1)(w2/w1 - 1)
  return (1.0 / beta2 + conv.hbar * omega2 * dn) * (1.0 - omega1 / omega2) -
         (1.0 / beta1) * (omega2 / omega1 - 1.0);
}

enum class WorkObjective { HighT, ExactQuantum };

/// Power maximization over the hot-stroke frequency with everything else held
/// fixed. Strokes are adiabatic, matching the setting of the analytic
/// efficiency-at-maximum-power formulas.
struct PowerProblem {
  double omega1 = 1.0;
  double beta1 = 0.1;
  double beta2 = 0.05;
  DeviationModel hot_deviation = Thermal{};
  double cycle_time = 1.0;
  Conventions conv = {};
  double bracket_lo = 0.0;  // defaults to omega1 * 1.0001
  double bracket_hi = 0.0;  // defaults to omega1 * 20
  WorkObjective objective = WorkObjective::HighT;

  double lo() const { return bracket_lo > 0.0 ? bracket_lo : omega1 * 1.0001; }
  double hi() const { return bracket_hi > 0.0 ? bracket_hi : omega1 * 20.0; }

  void validate() const {
    conv.validate();
    if (!(omega1 > 0.0)) throw std::invalid_argument("PowerProblem: omega1 must be positive");
    if (!(beta1 > 0.0) || !(beta2 > 0.0))
      throw std::invalid_argument("PowerProblem: inverse temperatures must be positive");
    if (!(cycle_time > 0.0)) throw std::invalid_argument("PowerProblem: cycle_time must be > 0");
    if (!(lo() > 0.0) || !(lo() < hi()))
      throw std::invalid_argument("PowerProblem: bracket must satisfy 0 < lo < hi");
  }

  double work_at(double omega2) const {
    if (objective == WorkObjective::HighT)
      return total_work_highT(omega1, omega2, beta1, beta2, hot_deviation, conv);
    CycleSpec spec;
    spec.cold = {beta1, Thermal{}};
    spec.hot = {beta2, hot_deviation};
    spec.omega1 = omega1;
    spec.omega2 = omega2;
    spec.compression = FrequencyProtocol::adiabatic(omega1, omega2);
    spec.expansion = FrequencyProtocol::adiabatic(omega2, omega1);
    spec.cycle_time = cycle_time;
    spec.conv = conv;
    const auto [w1, w3] = stroke_works(spec);
    return -(w1 + w3);
  }
};

struct EMPReport {
  double omega2_star = 0.0;
  double eta_at_max_power = 0.0;   // numeric, 1 - omega1/omega2* (adiabatic strokes)
  double eta_analytic = 0.0;       // closed-form comparison (NaN if no formula applies)
  double eta_curzon_ahlborn = 0.0;
  double discrepancy = 0.0;        // |numeric - analytic|
  double max_power = 0.0;
};

namespace detail {

/// Golden-section maximization of f on [lo, hi]; assumes unimodality there.
inline double golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                                 double tol) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol * std::max(1.0, std::abs(a) + std::abs(b))) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  return (a + b) / 2.0;
}

}  // namespace detail

/// Curzon-Ahlborn efficiency 1 - sqrt(beta2/beta1).
inline double curzon_ahlborn(double beta1, double beta2) {
  if (!(beta1 > 0.0) || !(beta2 > 0.0))
    throw std::domain_error("curzon_ahlborn: inverse temperatures must be positive");
  return 1.0 - std::sqrt(beta2 / beta1);
}

/// Efficiency at maximum power for reservoirs with delta_n ~ 1/omega2, where
/// dH_C = hbar*omega2*delta_n is frequency independent:
/// eta = 1 - sqrt(beta2/(beta1 (1 + beta2 dH_C))).
inline double emp_correlated(double beta1, double beta2, double dH_C) {
  if (!(beta1 > 0.0) || !(beta2 > 0.0))
    throw std::domain_error("emp_correlated: inverse temperatures must be positive");
  const double denom = 1.0 + beta2 * dH_C;
  if (!(denom > 0.0)) throw std::domain_error("emp_correlated: 1 + beta2 dH_C must be positive");
  const double radicand = beta2 / (beta1 * denom);
  if (!(radicand > 0.0)) throw std::domain_error("emp_correlated: radicand not positive");
  return 1.0 - std::sqrt(radicand);
}

/// Linear-regime expansion of emp_correlated: eta_c/2 + beta2^2 dH_C/(2 beta1).
inline double linear_regime_emp(double beta1, double beta2, double dH_C) {
  if (!(beta1 > 0.0) || !(beta2 > 0.0))
    throw std::domain_error("linear_regime_emp: inverse temperatures must be positive");
  const double eta_c = 1.0 - beta2 / beta1;
  return eta_c / 2.0 + beta2 * beta2 * dH_C / (2.0 * beta1);
}

struct CoherentEMP {
  double eta = 0.0;
  double ratio = 0.0;  // omega2*/omega1 at maximum power, first order in epsilon
  bool perturbative_ok = true;  // first-order correction below 10% of the leading term
};

/// First-order efficiency at maximum power for the coherent reservoir.
/// The optimal-ratio display resolves (against the numeric optimizer) to
///   omega1/omega2* = sqrt(beta2/beta1) [1 - (eps cos phi/(2 hbar beta2 w1))(1 - 2 sqrt(beta2/beta1))].
inline CoherentEMP emp_coherent(double beta1, double beta2, double epsilon, double phi,
                                double omega1, const Conventions& conv = {}) {
  conv.validate();
  if (!(beta1 > 0.0) || !(beta2 > 0.0))
    throw std::domain_error("emp_coherent: inverse temperatures must be positive");
  if (!(omega1 > 0.0)) throw std::domain_error("emp_coherent: omega1 must be positive");
  if (!(epsilon >= 0.0)) throw std::domain_error("emp_coherent: epsilon must be >= 0");
  const double root = std::sqrt(beta2 / beta1);
  const double correction =
      (epsilon * std::cos(phi) / (2.0 * conv.hbar * beta2 * omega1)) * (1.0 - 2.0 * root);
  CoherentEMP out;
  out.eta = 1.0 - root * (1.0 - correction);
  out.ratio = 1.0 / (root * (1.0 - correction));
  out.perturbative_ok = std::abs(correction) <= 0.1;
  return out;
}

/// Locates the interior power maximum over omega2 by coarse scan plus
/// golden-section refinement, and fills in the applicable analytic comparison.
inline EMPReport maximize_power(const PowerProblem& problem, double tolerance = 1e-10) {
  problem.validate();
  if (!(tolerance > 0.0)) throw std::invalid_argument("maximize_power: tolerance <= 0");
  const double lo = problem.lo(), hi = problem.hi();

  constexpr int kScan = 128;
  int best = 0;
  double best_w = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= kScan; ++i) {
    const double w = lo + (hi - lo) * i / kScan;
    const double val = problem.work_at(w);
    if (val > best_w) {
      best_w = val;
      best = i;
    }
  }
  if (best == 0 || best == kScan)
    throw NoInteriorMaximum("maximize_power: work is maximal at a bracket endpoint; widen or "
                            "shift the omega2 bracket");
  const double a = lo + (hi - lo) * (best - 1) / kScan;
  const double b = lo + (hi - lo) * (best + 1) / kScan;
  auto f = [&](double w) { return problem.work_at(w); };
  const double w_star = detail::golden_section_max(f, a, b, tolerance);

  EMPReport rep;
  rep.omega2_star = w_star;
  rep.eta_at_max_power = 1.0 - problem.omega1 / w_star;
  rep.max_power = problem.work_at(w_star) / problem.cycle_time;
  rep.eta_curzon_ahlborn = curzon_ahlborn(problem.beta1, problem.beta2);

  if (std::holds_alternative<Coherent>(problem.hot_deviation)) {
    const auto& dev = std::get<Coherent>(problem.hot_deviation);
    rep.eta_analytic = emp_coherent(problem.beta1, problem.beta2, dev.epsilon, dev.phi,
                                    problem.omega1, problem.conv)
                           .eta;
  } else if (std::holds_alternative<CustomTabulated>(problem.hot_deviation)) {
    rep.eta_analytic = std::numeric_limits<double>::quiet_NaN();
  } else {
    // delta_n ~ 1/omega families: dH_C is omega independent, evaluate at w*.
    ReservoirSpec hot{problem.beta2, problem.hot_deviation};
    const double dH_C =
        problem.conv.hbar * w_star * detail::delta_n_raw(hot, w_star, problem.conv);
    rep.eta_analytic = emp_correlated(problem.beta1, problem.beta2, dH_C);
  }
  rep.discrepancy = std::abs(rep.eta_at_max_power - rep.eta_analytic);
  return rep;
}

}  // namespace ottone
