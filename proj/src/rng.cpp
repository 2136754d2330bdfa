// Apache License, Version 2.0, refer to LICENSE.txt

#include "pymentropy/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace pymentropy {

double Rng::normal() {
  for (;;) {
    const double u = 2.0 * uniform() - 1.0;
    const double v = 2.0 * uniform() - 1.0;
    const double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) {
      return u * std::sqrt(-2.0 * std::log(s) / s);
    }
  }
}

double Rng::gamma(double shape) {
  if (shape < 0.0) {
    throw std::domain_error("Rng::gamma: shape must be nonnegative");
  }
  if (shape == 0.0) {
    return 0.0;
  }
  if (shape < 1.0) {
    return gamma(shape + 1.0) * std::pow(uniform(), 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    const double x = normal();
    const double t = 1.0 + c * x;
    if (t <= 0.0) {
      continue;
    }
    const double v = t * t * t;
    const double u = uniform();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) {
      return d * v;
    }
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) {
      return d * v;
    }
  }
}

double Rng::beta(double a, double b) {
  if (a < 0.0 || b < 0.0 || (a == 0.0 && b == 0.0)) {
    throw std::domain_error("Rng::beta: invalid shapes");
  }
  if (a == 0.0) {
    return 0.0;
  }
  if (b == 0.0) {
    return 1.0;
  }
  const double x = gamma(a);
  const double y = gamma(b);
  const double s = x + y;
  if (s > 0.0) {
    return x / s;
  }
  // Both draws underflowed (extremely small shapes): the limiting
  // distribution is a Bernoulli on the endpoints.
  return uniform() < a / (a + b) ? 1.0 : 0.0;
}

}  // namespace pymentropy
