#include "hpilg/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hpilg {

GaussRule1D gauss_1d(int n) {
  if (n < 1) throw std::invalid_argument("gauss_1d: need at least one point");
  GaussRule1D rule;
  rule.points.resize(n);
  rule.weights.resize(n);
  // Newton on P_n from the Chebyshev-like initial guesses; symmetric pairs.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      // P_n' from P_n and P_{n-1}.
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged root.
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    if (n == 1) p0 = 1.0;
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.points[i] = -x;
    rule.points[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.points[n / 2] = 0.0;
  return rule;
}

TriangleRule triangle_rule(int d) {
  if (d < 0) d = 0;
  const int n = (d + 3) / 2;  // ceil((d + 2) / 2)
  const GaussRule1D g = gauss_1d(n);
  TriangleRule rule;
  rule.degree = 2 * n - 2;
  rule.points.reserve(static_cast<std::size_t>(n) * n);
  rule.weights.reserve(static_cast<std::size_t>(n) * n);
  // (s, t) in [0,1]^2 -> (s (1 - t), t), Jacobian (1 - t).
  for (int j = 0; j < n; ++j) {
    const double t = 0.5 * (g.points[j] + 1.0);
    for (int i = 0; i < n; ++i) {
      const double s = 0.5 * (g.points[i] + 1.0);
      rule.points.push_back({s * (1.0 - t), t});
      rule.weights.push_back(0.25 * g.weights[i] * g.weights[j] * (1.0 - t));
    }
  }
  return rule;
}

int required_degree(int p, int q, int data_degree) {
  return std::max({2 * p * (q + 1), data_degree + p, 2 * p});
}

}  // namespace hpilg
