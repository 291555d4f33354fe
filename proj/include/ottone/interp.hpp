#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace ottone {

/// Monotone piecewise-cubic (Fritsch-Carlson) interpolant. Refuses
/// extrapolation: queries outside [x.front(), x.back()] throw.
class PchipInterpolant {
 public:
  PchipInterpolant() = default;

  PchipInterpolant(std::vector<double> x, std::vector<double> y)
      : x_(std::move(x)), y_(std::move(y)) {
    if (x_.size() != y_.size() || x_.size() < 2)
      throw std::invalid_argument("pchip: need >= 2 samples with matching sizes");
    for (std::size_t i = 1; i < x_.size(); ++i)
      if (!(x_[i] > x_[i - 1]))
        throw std::invalid_argument("pchip: abscissae must be strictly increasing");
    compute_tangents();
  }

  double min_x() const { return x_.front(); }
  double max_x() const { return x_.back(); }

  double operator()(double xq) const {
    if (!(xq >= x_.front() && xq <= x_.back()))
      throw std::domain_error("pchip: query outside sampled range");
    std::size_t i = locate(xq);
    const double h = x_[i + 1] - x_[i];
    const double t = (xq - x_[i]) / h;
    const double t2 = t * t, t3 = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1;
    const double h10 = t3 - 2 * t2 + t;
    const double h01 = -2 * t3 + 3 * t2;
    const double h11 = t3 - t2;
    return h00 * y_[i] + h10 * h * d_[i] + h01 * y_[i + 1] + h11 * h * d_[i + 1];
  }

 private:
  std::size_t locate(double xq) const {
    std::size_t lo = 0, hi = x_.size() - 1;
    while (hi - lo > 1) {
      std::size_t mid = (lo + hi) / 2;
      (x_[mid] <= xq ? lo : hi) = mid;
    }
    return lo;
  }

  void compute_tangents() {
    const std::size_t n = x_.size();
    std::vector<double> h(n - 1), delta(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      h[i] = x_[i + 1] - x_[i];
      delta[i] = (y_[i + 1] - y_[i]) / h[i];
    }
    d_.assign(n, 0.0);
    if (n == 2) {
      d_[0] = d_[1] = delta[0];
      return;
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
      if (delta[i - 1] * delta[i] <= 0.0) {
        d_[i] = 0.0;
      } else {
        const double w1 = 2 * h[i] + h[i - 1];
        const double w2 = h[i] + 2 * h[i - 1];
        d_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
      }
    }
    d_[0] = edge_tangent(h[0], h[1], delta[0], delta[1]);
    d_[n - 1] = edge_tangent(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
  }

  // Shape-preserving one-sided endpoint formula (as in scipy's pchip).
  static double edge_tangent(double h0, double h1, double del0, double del1) {
    double d = ((2 * h0 + h1) * del0 - h0 * del1) / (h0 + h1);
    if (d * del0 <= 0.0)
      d = 0.0;
    else if (del0 * del1 < 0.0 && std::abs(d) > 3.0 * std::abs(del0))
      d = 3.0 * del0;
    return d;
  }

  std::vector<double> x_, y_, d_;
};

}  // namespace ottone
