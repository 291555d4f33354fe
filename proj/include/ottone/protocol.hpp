#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <utility>
#include <vector>

#include "ottone/conventions.hpp"
#include "ottone/interp.hpp"

namespace ottone {

enum class ProtocolKind { Sudden, AdiabaticLimit, LinearRamp, SmoothStep, Tabulated };

/// Frequency course of one isentropic stroke. Sudden and AdiabaticLimit are
/// symbolic limits; the other kinds are integrated.
struct FrequencyProtocol {
  ProtocolKind kind = ProtocolKind::AdiabaticLimit;
  double omega_start = 1.0;
  double omega_end = 1.0;
  double duration = 0.0;              // ignored for Sudden / AdiabaticLimit
  PchipInterpolant omega_table;       // Tabulated only: (t, omega) samples

  static FrequencyProtocol sudden(double w0, double w1) {
    return {ProtocolKind::Sudden, w0, w1, 0.0, {}};
  }
  static FrequencyProtocol adiabatic(double w0, double w1) {
    return {ProtocolKind::AdiabaticLimit, w0, w1, 0.0, {}};
  }
  static FrequencyProtocol linear(double w0, double w1, double tau) {
    return {ProtocolKind::LinearRamp, w0, w1, tau, {}};
  }
  static FrequencyProtocol smoothstep(double w0, double w1, double tau) {
    return {ProtocolKind::SmoothStep, w0, w1, tau, {}};
  }
  static FrequencyProtocol tabulated(std::vector<double> t, std::vector<double> omega) {
    for (double w : omega)
      if (!(w > 0.0))
        throw std::invalid_argument("tabulated protocol: omega samples must be positive");
    if (t.empty() || t.front() != 0.0)
      throw std::invalid_argument("tabulated protocol: samples must start at t = 0");
    FrequencyProtocol p;
    p.kind = ProtocolKind::Tabulated;
    p.omega_start = omega.front();
    p.omega_end = omega.back();
    p.duration = t.back();
    p.omega_table = PchipInterpolant(std::move(t), std::move(omega));
    return p;
  }

  void validate() const {
    if (!(omega_start > 0.0) || !(omega_end > 0.0))
      throw std::invalid_argument("protocol: endpoint frequencies must be positive");
    if (kind == ProtocolKind::LinearRamp || kind == ProtocolKind::SmoothStep ||
        kind == ProtocolKind::Tabulated) {
      if (!(duration >= 0.0)) throw std::invalid_argument("protocol: duration must be >= 0");
    }
  }

  bool requires_integration() const {
    return kind != ProtocolKind::Sudden && kind != ProtocolKind::AdiabaticLimit;
  }

  double omega_at(double t) const {
    switch (kind) {
      case ProtocolKind::LinearRamp: {
        const double u = duration > 0.0 ? t / duration : 0.0;
        return omega_start + (omega_end - omega_start) * u;
      }
      case ProtocolKind::SmoothStep: {
        const double u = duration > 0.0 ? t / duration : 0.0;
        const double s = u * u * (3.0 - 2.0 * u);  // C^1 ramp in omega^2
        const double w2 = omega_start * omega_start +
                          (omega_end * omega_end - omega_start * omega_start) * s;
        return std::sqrt(w2);
      }
      case ProtocolKind::Tabulated:
        return omega_table(t);
      default:
        throw std::invalid_argument("omega_at: symbolic protocol has no time course");
    }
  }
};

/// Fundamental solutions of xddot + omega_t^2 x = 0 at the final time, for
/// initial data X(0)=0, Xdot(0)=1 and Y(0)=1, Ydot(0)=0.
struct ClassicalSolutionPair {
  double X = 0.0, Xdot = 1.0;
  double Y = 1.0, Ydot = 0.0;
  double wronskian_drift = 0.0;  // |X*Ydot - Y*Xdot + 1|
};

namespace detail {

// Dormand-Prince 5(4) on the 4-vector (X, Xdot, Y, Ydot).
using State4 = std::array<double, 4>;

inline State4 oscillator_rhs(const FrequencyProtocol& p, double t, const State4& y) {
  const double w = p.omega_at(t);
  const double w2 = w * w;
  return {y[1], -w2 * y[0], y[3], -w2 * y[2]};
}

inline ClassicalSolutionPair integrate_pair(const FrequencyProtocol& p, double tol) {
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                          a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                          a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                          e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  const double T = p.duration;
  State4 y = {0.0, 1.0, 1.0, 0.0};
  if (T == 0.0) return {};

  double t = 0.0;
  double wmax = std::max(p.omega_start, p.omega_end);
  double h = std::min(T, 0.1 / wmax);
  State4 k1 = oscillator_rhs(p, t, y);

  auto axpy = [](const State4& y0, double hh, std::initializer_list<std::pair<double, const State4*>> terms) {
    State4 out = y0;
    for (auto& [c, k] : terms)
      for (int i = 0; i < 4; ++i) out[i] += hh * c * (*k)[i];
    return out;
  };

  const double hmin = std::max(T * 1e-15, 1e-300);
  int steps = 0;
  while (t < T) {
    if (h < hmin) throw IntegrationError("oscillator integration: step size underflow");
    if (++steps > 100'000'000) throw IntegrationError("oscillator integration: step budget exhausted");
    if (t + h > T) h = T - t;

    State4 k2 = oscillator_rhs(p, t + c2 * h, axpy(y, h, {{a21, &k1}}));
    State4 k3 = oscillator_rhs(p, t + c3 * h, axpy(y, h, {{a31, &k1}, {a32, &k2}}));
    State4 k4 = oscillator_rhs(p, t + c4 * h, axpy(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
    State4 k5 = oscillator_rhs(
        p, t + c5 * h, axpy(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
    State4 k6 = oscillator_rhs(
        p, t + h, axpy(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
    State4 y5 = axpy(y, h, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
    State4 k7 = oscillator_rhs(p, t + h, y5);

    double err = 0.0;
    for (int i = 0; i < 4; ++i) {
      const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                             e7 * k7[i]);
      const double sc = tol + tol * std::max(std::abs(y[i]), std::abs(y5[i]));
      err = std::max(err, std::abs(ei) / sc);
    }
    if (err <= 1.0) {
      t += h;
      y = y5;
      k1 = k7;  // FSAL
    }
    double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
    h *= std::clamp(fac, 0.2, 5.0);
  }

  ClassicalSolutionPair out;
  out.X = y[0];
  out.Xdot = y[1];
  out.Y = y[2];
  out.Ydot = y[3];
  out.wronskian_drift = std::abs(out.X * out.Ydot - out.Y * out.Xdot + 1.0);
  return out;
}

}  // namespace detail

/// Solves the classical parametric-oscillator pair for an integrable protocol.
inline ClassicalSolutionPair solve_classical_pair(const FrequencyProtocol& protocol,
                                                  double tolerance = 1e-10) {
  protocol.validate();
  if (!(tolerance > 0.0)) throw std::invalid_argument("solve_classical_pair: tolerance <= 0");
  if (!protocol.requires_integration())
    throw std::invalid_argument(
        "solve_classical_pair: Sudden/AdiabaticLimit have closed forms, nothing to integrate");
  return detail::integrate_pair(protocol, tolerance);
}

enum class QStarMethod { ClosedForm, Ode };

struct AdiabaticityResult {
  double q_star = 1.0;
  QStarMethod method = QStarMethod::ClosedForm;
  double error_estimate = 0.0;
};

inline double sudden_q_star(double w0, double w1) {
  return (w0 * w0 + w1 * w1) / (2.0 * w0 * w1);
}

namespace detail {

inline double q_star_from_pair(const ClassicalSolutionPair& s, double w0, double w1) {
  return (w0 * w0 * (w1 * w1 * s.X * s.X + s.Xdot * s.Xdot) + w1 * w1 * s.Y * s.Y +
          s.Ydot * s.Ydot) /
         (2.0 * w0 * w1);
}

}  // namespace detail

/// Adiabaticity parameter Q* of a stroke: 1 for the adiabatic limit,
/// (w0^2+w1^2)/(2 w0 w1) for a sudden quench, otherwise from the ODE pair.
inline AdiabaticityResult adiabaticity_Q(const FrequencyProtocol& protocol,
                                         double tolerance = 1e-10) {
  protocol.validate();
  AdiabaticityResult out;
  switch (protocol.kind) {
    case ProtocolKind::Sudden:
      out.q_star = sudden_q_star(protocol.omega_start, protocol.omega_end);
      return out;
    case ProtocolKind::AdiabaticLimit:
      out.q_star = 1.0;
      return out;
    default:
      break;
  }
  if (protocol.duration == 0.0) {
    out.q_star = sudden_q_star(protocol.omega_start, protocol.omega_end);
    return out;
  }
  const auto pair = solve_classical_pair(protocol, tolerance);
  out.q_star = detail::q_star_from_pair(pair, protocol.omega_start, protocol.omega_end);
  out.method = QStarMethod::Ode;
  out.error_estimate = 10.0 * tolerance + pair.wronskian_drift;
  return out;
}

/// Second moments of a centered single-mode state.
struct Covariance {
  double xx = 0.0;  // <x^2>
  double pp = 0.0;  // <p^2>
  double xp = 0.0;  // <xp + px>/2

  double det() const { return xx * pp - xp * xp; }

  void validate(const Conventions& conv = {}, double slack = 1e-9) const {
    if (!(xx > 0.0) || !(pp > 0.0))
      throw std::invalid_argument("Covariance: quadratures must be positive");
    const double floor = conv.hbar * conv.hbar / 4.0;
    if (det() < floor * (1.0 - slack))
      throw std::invalid_argument("Covariance: uncertainty relation violated");
  }
};

/// Covariance of a thermal-like centered state with symplectic eigenvalue
/// nu = occupation + 1/2 at frequency omega.
inline Covariance thermal_like_covariance(double nu, double omega, const Conventions& conv = {}) {
  conv.validate();
  if (!(nu >= 0.5)) throw std::invalid_argument("thermal_like_covariance: nu must be >= 1/2");
  if (!(omega > 0.0)) throw std::invalid_argument("thermal_like_covariance: omega must be > 0");
  return {conv.hbar * nu / (conv.mass * omega), conv.mass * conv.hbar * omega * nu, 0.0};
}

/// Propagates second moments through one stroke via the linear phase-space map
/// x -> Y x + (X/m) p, p -> m Ydot x + Xdot p.
inline Covariance propagate_covariance(const FrequencyProtocol& protocol,
                                       const Covariance& initial, const Conventions& conv = {},
                                       double tolerance = 1e-10) {
  protocol.validate();
  conv.validate();
  initial.validate(conv);
  switch (protocol.kind) {
    case ProtocolKind::Sudden:
      return initial;  // state frozen, only the Hamiltonian changes
    case ProtocolKind::AdiabaticLimit: {
      const double r = protocol.omega_start / protocol.omega_end;
      return {initial.xx * r, initial.pp / r, initial.xp};
    }
    default:
      break;
  }
  if (protocol.duration == 0.0) return initial;
  const auto s = solve_classical_pair(protocol, tolerance);
  const double m = conv.mass;
  // S = [[Y, X/m], [m*Ydot, Xdot]], sigma' = S sigma S^T
  const double a = s.Y, b = s.X / m, c = m * s.Ydot, d = s.Xdot;
  Covariance out;
  out.xx = a * a * initial.xx + 2.0 * a * b * initial.xp + b * b * initial.pp;
  out.pp = c * c * initial.xx + 2.0 * c * d * initial.xp + d * d * initial.pp;
  out.xp = a * c * initial.xx + (a * d + b * c) * initial.xp + b * d * initial.pp;
  return out;
}

/// Mean oscillator energy of a centered state at the given frequency.
inline double mean_energy(const Covariance& cov, double omega, const Conventions& conv = {}) {
  return cov.pp / (2.0 * conv.mass) + conv.mass * omega * omega * cov.xx / 2.0;
}

}  // namespace ottone
