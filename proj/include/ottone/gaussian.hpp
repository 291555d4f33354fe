#pragma once

#include <cmath>
#include <limits>

#include "ottone/conventions.hpp"
#include "ottone/protocol.hpp"

namespace ottone {

/// Centered single-mode Gaussian state: second moments plus the frequency at
/// which energies are evaluated.
struct GaussianState {
  Covariance cov;
  double frequency_context = 1.0;

  void validate(const Conventions& conv = {}) const {
    cov.validate(conv);
    if (!(frequency_context > 0.0))
      throw std::invalid_argument("GaussianState: frequency must be positive");
  }

  static GaussianState thermal_like(double occupation, double omega,
                                    const Conventions& conv = {}) {
    return {thermal_like_covariance(occupation + 0.5, omega, conv), omega};
  }
};

inline double symplectic_eigenvalue(const Covariance& cov, const Conventions& conv = {}) {
  return std::sqrt(cov.det()) / conv.hbar;
}

/// Entropy of a single-mode Gaussian state as a function of its symplectic
/// eigenvalue: g(nu) = (nu+1/2)ln(nu+1/2) - (nu-1/2)ln(nu-1/2).
inline double gaussian_entropy_g(double nu) {
  if (nu <= 0.5) return 0.0;  // pure state (clamps numerical dips below 1/2)
  const double up = nu + 0.5, dn = nu - 0.5;
  return up * std::log(up) - dn * std::log(dn);
}

inline double von_neumann_entropy(const GaussianState& state, const Conventions& conv = {}) {
  state.validate(conv);
  return gaussian_entropy_g(symplectic_eigenvalue(state.cov, conv));
}

/// Quantum relative entropy S(rho1 || rho2) of centered single-mode Gaussians.
/// ln(rho2) is a quadratic form fixed by its covariance (Williamson form); the
/// cross term reduces to tr(sigma2^{-1} sigma1). A pure rho2 distinct from
/// rho1 yields +infinity as a distinguished value.
inline double relative_entropy_gaussian(const GaussianState& rho1, const GaussianState& rho2,
                                        const Conventions& conv = {}) {
  rho1.validate(conv);
  rho2.validate(conv);
  const double nu1 = std::max(symplectic_eigenvalue(rho1.cov, conv), 0.5);
  const double nu2 = std::max(symplectic_eigenvalue(rho2.cov, conv), 0.5);

  const auto& s1 = rho1.cov;
  const auto& s2 = rho2.cov;
  // Scale-invariant: tr(sigma2^{-1} sigma1).
  const double trace_term = (s2.pp * s1.xx - 2.0 * s2.xp * s1.xp + s2.xx * s1.pp) / s2.det();

  if (nu2 <= 0.5 + 1e-12) {
    const double same = std::abs(s1.xx - s2.xx) <= 1e-12 * s2.xx &&
                        std::abs(s1.pp - s2.pp) <= 1e-12 * s2.pp &&
                        std::abs(s1.xp - s2.xp) <=
                            1e-12 * std::sqrt(s2.xx * s2.pp);
    return same ? 0.0 : std::numeric_limits<double>::infinity();
  }

  // xi = ln((nu2+1/2)/(nu2-1/2)); Z2 = 1/(2 sinh(xi/2)) = sqrt((nu2+1/2)(nu2-1/2))
  const double xi2 = std::log((nu2 + 0.5) / (nu2 - 0.5));
  const double log_Z2 = 0.5 * std::log((nu2 + 0.5) * (nu2 - 0.5));
  const double s = -gaussian_entropy_g(nu1) + 0.5 * xi2 * nu2 * trace_term + log_Z2;
  return std::max(s, 0.0);  // Klein inequality; guards rounding at coincidence
}

}  // namespace ottone
