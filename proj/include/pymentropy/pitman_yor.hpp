// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include "pymentropy/count_data.hpp"

namespace pymentropy {

/// Pitman-Yor process parameters: discount d in [0, 1) and concentration
/// alpha >= -d (equality is the degenerate single-atom case). d = 0
/// recovers the Dirichlet process.
struct PYParams {
  double discount = 0.0;
  double concentration = 0.0;

  PYParams() = default;
  /// Throws std::domain_error outside the parameter domain.
  PYParams(double d, double alpha);
};

struct PosteriorMoments {
  double mean = 0.0;      // nats
  double variance = 0.0;  // nats^2, clamped at zero
};

/// Prior mean of entropy: psi_0(alpha + 1) - psi_0(1 - d).
double py_prior_mean(const PYParams& params);

/// Prior variance of entropy:
///   (alpha + d) / ((alpha + 1)^2 (1 - d))
///   + ((1 - d) / (alpha + 1)) psi_1(2 - d) - psi_1(2 + alpha).
double py_prior_variance(const PYParams& params);

/// Posterior mean of entropy given counts. The posterior splits into a
/// Dirichlet over the observed symbols and a fresh Pitman-Yor tail of mass
/// p_* ~ Beta(alpha + K d, N - K d); the closed form is
///   psi_0(alpha + N + 1) - ((alpha + K d) / (alpha + N)) psi_0(1 - d)
///   - (1 / (alpha + N)) sum_i (n_i - d) psi_0(n_i - d + 1).
double py_posterior_mean(const Multiplicities& m, const PYParams& params);
double py_posterior_mean(const CountData& c, const PYParams& params);

/// Posterior variance of entropy, assembled by the law of total variance
/// from the Dirichlet head, the Pitman-Yor tail at (d, alpha + K d), and
/// Beta moments of the tail mass p_*.
double py_posterior_variance(const Multiplicities& m, const PYParams& params);
double py_posterior_variance(const CountData& c, const PYParams& params);

/// Posterior mean and variance in one pass.
PosteriorMoments py_posterior_moments(const Multiplicities& m,
                                      const PYParams& params);

/// Log marginal probability of the observed partition of N samples into
/// groups of the given sizes (the exchangeable partition probability):
///   prod_{l=1}^{K-1} (alpha + l d) * prod_i Gamma(n_i - d)
///   * Gamma(1 + alpha) / (Gamma(1 - d)^K Gamma(alpha + N)).
/// Returns -inf at alpha = 0, d = 0 with K >= 2.
double py_log_evidence(const Multiplicities& m, const PYParams& params);
double py_log_evidence(const CountData& c, const PYParams& params);

/// Multiplicities form of the evidence, with the count-profile combinatorial
/// factor prod_i (1/i!)^{m_i} M!/m_i!. Shape only: it differs from
/// py_log_evidence by an additive constant independent of (d, alpha), so
/// only differences across parameter values are meaningful.
double py_log_evidence_multiplicities(const Multiplicities& m,
                                      const PYParams& params);

/// Moments of p ~ Beta(a, b) used to assemble the posterior variance, with
/// h(p) = -p ln p - (1 - p) ln(1 - p). Every identity is a closed form in
/// digamma/trigamma. Exposed for direct verification against quadrature.
struct BetaEntropyMoments {
  double mean_p = 0.0;             // E[p]
  double mean_p_sq = 0.0;          // E[p^2]
  double mean_one_minus_p_sq = 0.0;  // E[(1-p)^2]
  double mean_h = 0.0;             // E[h(p)]
  double mean_h_sq = 0.0;          // E[h(p)^2]
  double mean_p_h = 0.0;           // E[p h(p)]
};
BetaEntropyMoments beta_entropy_moments(double a, double b);

}  // namespace pymentropy
