#pragma once

#include <cmath>
#include <sstream>
#include <vector>

#include "ottone/conventions.hpp"

namespace ottone {

/// Thermal-like diagonal state in the number basis: geometric distribution
/// with mean occupation nbar at the given frequency.
struct ThermalLikeParams {
  double nbar = 1.0;
  double omega = 1.0;
};

/// Independent oracle for relative_entropy_gaussian: builds the diagonal
/// number-basis distributions explicitly and computes
/// tr rho1 (ln rho1 - ln rho2) by direct summation up to the cutoff.
/// Refuses to answer when the truncated trace drops below 1 - 1e-12.
inline double fock_oracle_relative_entropy(const ThermalLikeParams& rho1,
                                           const ThermalLikeParams& rho2, int cutoff) {
  if (!(rho1.nbar > 0.0) || !(rho2.nbar > 0.0))
    throw std::domain_error("fock oracle: occupations must be positive");
  if (std::abs(rho1.omega - rho2.omega) >
      1e-12 * std::max(rho1.omega, rho2.omega))
    throw std::invalid_argument(
        "fock oracle: states must share a frequency (number bases must coincide)");
  if (cutoff < 2) throw std::invalid_argument("fock oracle: cutoff must be >= 2");

  auto weights = [cutoff](double nbar) {
    std::vector<double> p(static_cast<std::size_t>(cutoff));
    const double q = nbar / (nbar + 1.0);
    double w = 1.0 / (nbar + 1.0);
    for (auto& pi : p) {
      pi = w;
      w *= q;
    }
    return p;
  };
  const auto p1 = weights(rho1.nbar);
  const auto p2 = weights(rho2.nbar);

  double trace1 = 0.0, trace2 = 0.0;
  for (int n = 0; n < cutoff; ++n) {
    trace1 += p1[n];
    trace2 += p2[n];
  }
  if (trace1 < 1.0 - 1e-12 || trace2 < 1.0 - 1e-12) {
    std::ostringstream msg;
    msg << "fock oracle: cutoff " << cutoff << " truncates the trace to min("
        << trace1 << ", " << trace2 << ") < 1 - 1e-12";
    throw InsufficientCutoff(msg.str());
  }

  double s = 0.0;
  for (int n = 0; n < cutoff; ++n) s += p1[n] * (std::log(p1[n]) - std::log(p2[n]));
  return s;
}

}  // namespace ottone
