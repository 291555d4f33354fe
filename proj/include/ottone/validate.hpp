#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "ottone/cycle.hpp"
#include "ottone/rng.hpp"
#include "ottone/second_law.hpp"

namespace ottone {

/// Sampling envelope for the invariant battery. Defaults keep every sample in
/// the high-temperature, weak-deviation regime where the analytic bounds hold.
struct SampleEnvelope {
  double max_beta_omega = 0.01;  // hbar*beta*omega upper bound, both reservoirs
  double min_beta_omega = 0.001;
  double omega1_lo = 0.5, omega1_hi = 2.0;
  double ratio_lo = 1.1, ratio_hi = 4.0;      // omega2/omega1
  double max_beta_lambda = 0.1;               // correlated-pair strength
  double max_coherent_dev = 0.3;              // |delta_n| / n_bar for coherent
};

/// Deterministic sample k of a physical cycle spec (adiabatic strokes). The
/// deviation model cycles through thermal, one-atom, two-atom and coherent.
inline CycleSpec sample_cycle_spec(const CounterRng& rng, std::uint64_t k,
                                   const SampleEnvelope& env = {}) {
  const std::uint64_t base = k * 8;
  const Conventions conv;
  const double w1 = rng.uniform(base + 0, env.omega1_lo, env.omega1_hi);
  const double w2 = w1 * rng.uniform(base + 1, env.ratio_lo, env.ratio_hi);
  const double x2 = rng.uniform(base + 2, env.min_beta_omega, env.max_beta_omega);
  const double x1 = rng.uniform(base + 3, x2, env.max_beta_omega);
  const double beta2 = x2 / (conv.hbar * w2);
  const double beta1 = x1 / (conv.hbar * w1);

  DeviationModel dev = Thermal{};
  switch (k % 4) {
    case 1: {
      const double lambda = rng.uniform(base + 4, 0.0, env.max_beta_lambda) / (conv.hbar * beta2);
      dev = CorrelatedPair{lambda, PairMode::OneAtom};
      break;
    }
    case 2: {
      const double lambda = rng.uniform(base + 4, 0.0, env.max_beta_lambda) / (conv.hbar * beta2);
      dev = CorrelatedPair{lambda, PairMode::TwoAtom};
      break;
    }
    case 3: {
      // epsilon scaled so |delta_n| stays a bounded fraction of n_bar.
      const double eps = rng.uniform(base + 4, 0.0, env.max_coherent_dev * x2);
      const double phi = rng.uniform(base + 5, 0.0, 2.0 * 3.14159265358979323846);
      dev = Coherent{eps, phi};
      break;
    }
    default:
      break;
  }

  CycleSpec spec = CycleSpec::adiabatic_thermal(w1, w2, beta1, beta2);
  spec.hot.deviation = dev;
  spec.cycle_time = rng.uniform(base + 6, 0.5, 10.0);
  return spec;
}

struct CheckStats {
  long checked = 0;
  long failed = 0;
  double worst_margin = std::numeric_limits<double>::infinity();

  void record(bool pass, double margin) {
    ++checked;
    if (!pass) ++failed;
    worst_margin = std::min(worst_margin, margin);
  }
};

struct ValidationSummary {
  long samples = 0;
  CheckStats first_law;          // margin: tol - |closure|/maxE
  CheckStats klein;              // margin: entropy production
  CheckStats second_law_ineq;    // margin: -b2eff Q2 - b1eff Q4 (engine window only)
  CheckStats eta_bound;          // margin: eta_max + tol - eta
  CheckStats clausius;           // margin: 1 pass / 0 fail
  CheckStats window_consistency; // engine window <=> heat signs
  long regime_warnings = 0;
  std::vector<std::uint64_t> failed_samples;

  bool all_passed() const {
    return first_law.failed + klein.failed + second_law_ineq.failed + eta_bound.failed +
               clausius.failed + window_consistency.failed ==
           0;
  }
};

/// Runs the full invariant battery over `count` seeded samples.
inline ValidationSummary run_validation(std::uint64_t seed, long count,
                                        const SampleEnvelope& env = {}) {
  const CounterRng rng(seed);
  ValidationSummary sum;
  sum.samples = count;
  for (long k = 0; k < count; ++k) {
    const CycleSpec spec = sample_cycle_spec(rng, static_cast<std::uint64_t>(k), env);
    bool sample_ok = true;

    const auto r = evaluate_cycle(spec);
    const double maxE =
        std::max({std::abs(r.E_A), std::abs(r.E_B), std::abs(r.E_C), std::abs(r.E_D)});
    const double closure = std::abs(r.W1 + r.W3 + r.Q2 + r.Q4);
    {
      const bool pass = closure < 1e-12 * maxE;
      sum.first_law.record(pass, 1e-12 - closure / maxE);
      sample_ok &= pass;
    }

    const double sigma = entropy_production(spec);
    {
      const bool pass = sigma >= -1e-12;
      sum.klein.record(pass, sigma);
      sample_ok &= pass;
    }

    const auto dev = deviation_energies(spec);
    const auto bound = max_efficiency(spec.cold.beta, spec.hot.beta, dev.dH_A, dev.dH_C,
                                      spec.omega1, spec.omega2);
    const auto window = engine_window(spec);

    if (window.ok) {
      const double margin =
          second_law_margin(r.Q2, r.Q4, bound.beta1_eff, bound.beta2_eff);
      const bool pass = margin >= -1e-12;
      sum.second_law_ineq.record(pass, margin);
      sample_ok &= pass;

      if (r.is_engine) {
        const bool eta_pass = r.efficiency <= bound.value + 1e-4;
        sum.eta_bound.record(eta_pass, bound.value + 1e-4 - r.efficiency);
        sample_ok &= eta_pass;
      }
    }

    if (r.W_total >= 0.0 && window.ok) {
      const auto t1 = effective_temperature(spec.cold, spec.omega1, spec.conv);
      const auto t2 = effective_temperature(spec.hot, spec.omega2, spec.conv);
      const auto cl = clausius_direction(t1.value, t2.value, r.Q2, r.W_total);
      sum.clausius.record(cl.ok, cl.ok ? 1.0 : 0.0);
      sample_ok &= cl.ok;
    }

    {
      const double tol = 1e-12 * maxE;
      const bool signs = r.Q2 >= -tol && r.Q4 <= tol;
      const bool pass = window.ok == signs;
      sum.window_consistency.record(pass, pass ? 1.0 : 0.0);
      sample_ok &= pass;
    }

    const auto regime = regime_check(spec.hot, spec.omega2, spec.conv);
    if (!regime.high_temperature ||
        (regime.weak_correlation && !*regime.weak_correlation))
      ++sum.regime_warnings;

    if (!sample_ok) sum.failed_samples.push_back(static_cast<std::uint64_t>(k));
  }
  return sum;
}

}  // namespace ottone
