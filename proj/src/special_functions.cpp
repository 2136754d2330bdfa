// Apache License, Version 2.0, refer to LICENSE.txt

#include "pymentropy/special_functions.hpp"

#include <cmath>
#include <stdexcept>

#include "pymentropy/errors.hpp"

namespace pymentropy {

namespace {

// B_{2n} / (2n) for the digamma asymptotic tail.
constexpr double kDigammaTail[] = {
    1.0 / 12.0,        -1.0 / 120.0,      1.0 / 252.0,
    -1.0 / 240.0,      1.0 / 132.0,       -691.0 / 32760.0,
    1.0 / 12.0,        -3617.0 / 8160.0,  43867.0 / 14364.0,
};

// B_{2n} for the trigamma asymptotic tail.
constexpr double kTrigammaTail[] = {
    1.0 / 6.0,   -1.0 / 30.0,     1.0 / 42.0,  -1.0 / 30.0, 5.0 / 66.0,
    -691.0 / 2730.0, 7.0 / 6.0,   -3617.0 / 510.0, 43867.0 / 798.0,
};

// Recurrence shift target; beyond it the Bernoulli series is accurate to
// well under 1e-13 absolute.
constexpr double kShift = 6.5;

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0)) {
    throw std::domain_error("log_gamma: argument must be positive");
  }
  return std::lgamma(x);
}

double digamma(double x) {
  if (!(x > 0.0)) {
    throw std::domain_error("digamma: argument must be positive");
  }
  double acc = 0.0;
  while (x < kShift) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double z = inv * inv;
  double tail = 0.0;
  for (int i = 8; i >= 0; --i) {
    tail = (tail + kDigammaTail[i]) * z;
  }
  return acc + std::log(x) - 0.5 * inv - tail;
}

double trigamma(double x) {
  if (!(x > 0.0)) {
    throw std::domain_error("trigamma: argument must be positive");
  }
  double acc = 0.0;
  while (x < kShift) {
    acc += 1.0 / (x * x);
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double z = inv * inv;
  double tail = 0.0;
  for (int i = 8; i >= 0; --i) {
    tail = (tail + kTrigammaTail[i]) * z;
  }
  return acc + inv * (1.0 + 0.5 * inv + tail);
}

double inverse_digamma(double y) {
  if (!std::isfinite(y)) {
    throw std::domain_error("inverse_digamma: argument must be finite");
  }
  // Initial guess: exp(y) + 1/2 on the right branch, -1/(y + gamma) deep in
  // the left tail where psi_0(x) ~ -1/x - gamma.
  double x = (y >= -2.22) ? std::exp(y) + 0.5 : -1.0 / (y + kEulerGamma);
  for (int it = 0; it < 100; ++it) {
    const double err = digamma(x) - y;
    if (std::abs(err) <= 1e-12 * (1.0 + std::abs(y))) {
      return x;
    }
    const double step = err / trigamma(x);
    double next = x - step;
    if (!(next > 0.0)) {
      next = x / 10.0;  // keep the iterate on the positive axis
    }
    if (next == x) {
      return x;  // step below representable resolution
    }
    x = next;
  }
  if (std::abs(digamma(x) - y) <= 1e-10 * (1.0 + std::abs(y))) {
    return x;
  }
  throw NumericalError("inverse_digamma: Newton iteration did not converge");
}

double log_beta(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw std::domain_error("log_beta: arguments must be positive");
  }
  return log_gamma(a) + log_gamma(b) - log_gamma(a + b);
}

}  // namespace pymentropy
