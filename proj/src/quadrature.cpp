// Apache License, Version 2.0, refer to LICENSE.txt

#include "pymentropy/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pymentropy {

QuadratureRule gauss_legendre(int n, double a, double b) {
  if (n < 1) {
    throw std::invalid_argument("gauss_legendre: need at least one node");
  }
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);

  const double mid = 0.5 * (b + a);
  const double half = 0.5 * (b - a);
  const int m = (n + 1) / 2;
  for (int i = 1; i <= m; ++i) {
    // Newton on P_n(z) from the Chebyshev-angle starting guess.
    double z = std::cos(std::numbers::pi * (i - 0.25) / (n + 0.5));
    double pp = 0.0;
    for (int sweep = 0; sweep < 100; ++sweep) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) <= 1e-15) {
        break;
      }
    }
    rule.nodes[i - 1] = mid - half * z;
    rule.nodes[n - i] = mid + half * z;
    rule.weights[i - 1] = 2.0 * half / ((1.0 - z * z) * pp * pp);
    rule.weights[n - i] = rule.weights[i - 1];
  }
  return rule;
}

QuadratureRule gauss_legendre_semi_infinite(int n, double scale, double cap) {
  const QuadratureRule base = gauss_legendre(n, 0.0, 1.0);
  QuadratureRule rule;
  rule.nodes.reserve(n);
  rule.weights.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double t = base.nodes[i];
    const double om = 1.0 - t;
    const double x = scale * t / om;
    if (!(x <= cap)) {
      continue;
    }
    rule.nodes.push_back(x);
    rule.weights.push_back(base.weights[i] * scale / (om * om));
  }
  return rule;
}

}  // namespace pymentropy
