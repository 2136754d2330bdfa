// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <cstddef>
#include <vector>

namespace pymentropy {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Legendre rule with n nodes on [a, b]. Exact for polynomials of
/// degree 2n - 1.
QuadratureRule gauss_legendre(int n, double a, double b);

/// Gauss-Legendre rule on (0, 1) pushed through the rational map
/// x = scale * t / (1 - t), covering [0, inf). Weights absorb the Jacobian
/// scale / (1 - t)^2. Nodes above `cap` are dropped.
QuadratureRule gauss_legendre_semi_infinite(int n, double scale, double cap);

}  // namespace pymentropy
