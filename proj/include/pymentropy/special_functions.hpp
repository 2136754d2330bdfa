// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

namespace pymentropy {

inline constexpr double kEulerGamma = 0.57721566490153286061;

/// ln Gamma(x) for x > 0. Throws std::domain_error otherwise.
double log_gamma(double x);

/// Digamma psi_0(x) for x > 0, absolute error below 1e-12 on [1e-6, 1e6].
double digamma(double x);

/// Trigamma psi_1(x) for x > 0, absolute error below 1e-10.
double trigamma(double x);

/// Inverse of the digamma function: the unique x > 0 with psi_0(x) = y.
/// Newton iteration; throws NumericalError if it fails to converge
/// (does not happen for y in [-700, 700]).
double inverse_digamma(double y);

/// ln B(a, b) = ln Gamma(a) + ln Gamma(b) - ln Gamma(a + b), a, b > 0.
double log_beta(double a, double b);

}  // namespace pymentropy
