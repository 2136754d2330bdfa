// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <cstdint>
#include <vector>

#include "pymentropy/count_data.hpp"
#include "pymentropy/entropy_estimate.hpp"

namespace pymentropy {

/// Posterior moments of entropy under a fixed symmetric Dirichlet prior.
struct DirPosteriorMoments {
  double mean = 0.0;           // nats
  double second_moment = 0.0;  // nats^2
  double variance = 0.0;       // nats^2, clamped at zero
};

/// One block of identical Dirichlet pseudocounts: `value` repeated
/// `multiplicity` times. Unobserved bins enter as a single block, so moment
/// evaluation is O(number of blocks) regardless of the alphabet size.
struct PseudocountGroup {
  double value = 0.0;
  double multiplicity = 0.0;
};

/// Mean and second moment of H(p) for p ~ Dirichlet with the given grouped
/// pseudocounts.
DirPosteriorMoments dirichlet_entropy_moments(
    const std::vector<PseudocountGroup>& groups);

/// Entropy of the empirical frequencies, -sum (n_i/N) ln(n_i/N).
double plugin_entropy(const Multiplicities& m);
double plugin_entropy(const CountData& c);

/// Plugin estimate plus the first-order bias correction (K - 1) / (2N).
double miller_madow(const Multiplicities& m);
double miller_madow(const CountData& c);

/// Posterior mean/variance of H given counts, a finite alphabet of size
/// `alphabet_size`, and a symmetric Dirichlet(alpha) prior.
DirPosteriorMoments dir_posterior_moments(const Multiplicities& m,
                                          std::uint64_t alphabet_size,
                                          double alpha);
DirPosteriorMoments dir_posterior_moments(const CountData& c,
                                          std::uint64_t alphabet_size,
                                          double alpha);

/// Unnormalized NSB hyperprior density over the Dirichlet concentration:
/// A psi_1(A alpha + 1) - psi_1(alpha + 1), the derivative of the prior
/// mean entropy, which spreads the induced prior on H evenly over
/// [0, ln A].
double nsb_weight(double alpha, std::uint64_t alphabet_size);

/// Log marginal likelihood of the counts under Dirichlet(alpha) on a finite
/// alphabet (a Polya / Dirichlet-multinomial distribution, multinomial
/// coefficient included).
double polya_log_evidence(const Multiplicities& m, std::uint64_t alphabet_size,
                          double alpha);
double polya_log_evidence(const CountData& c, std::uint64_t alphabet_size,
                          double alpha);

/// NSB estimator: the Dirichlet posterior mean of H averaged over alpha with
/// evidence times nsb_weight, integrated on a log-alpha grid; the reported
/// variance combines within- and between-alpha terms.
EntropyEstimate nsb_estimate(const Multiplicities& m,
                             std::uint64_t alphabet_size);
EntropyEstimate nsb_estimate(const CountData& c, std::uint64_t alphabet_size);

/// Large-alphabet limit of NSB: 2 ln N + psi_0(N - K) - psi_0(1) - ln 2.
/// Point estimate only; requires at least one coincidence.
EntropyEstimate ansb_estimate(const Multiplicities& m);
EntropyEstimate ansb_estimate(const CountData& c);

}  // namespace pymentropy
