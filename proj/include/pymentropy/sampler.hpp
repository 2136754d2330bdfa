// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <cstddef>
#include <vector>

#include "pymentropy/count_data.hpp"
#include "pymentropy/pitman_yor.hpp"
#include "pymentropy/pym.hpp"
#include "pymentropy/rng.hpp"

namespace pymentropy {

/// A truncated stick-breaking draw: size-biased weights and the mass of the
/// unbroken remainder. weights.sum() + remaining_mass = 1.
struct WeightSample {
  std::vector<double> weights;
  double remaining_mass = 0.0;
};

inline constexpr std::size_t kStickCap = 10'000'000;

/// Breaks up to n_sticks sticks: beta_i ~ Beta(1 - d, alpha + i d),
/// pi_i = beta_i * prod_{j<i} (1 - beta_j). Stops early if the remaining
/// mass hits zero.
WeightSample stick_break(const PYParams& params, std::size_t n_sticks,
                         Rng& rng);

/// One draw of H(pi) for pi ~ PY(d, alpha), breaking sticks until the
/// entropy contributed by the unbroken tail (itself Pitman-Yor distributed
/// with concentration alpha + n d) has variance below tail_var_tol; the tail
/// then enters through its exact mean. Throws TailTruncationError past the
/// stick cap.
double sample_prior_entropy(const PYParams& params, double tail_var_tol,
                            Rng& rng);

/// One draw of H from the posterior given counts: Dirichlet head over the
/// observed symbols plus a tail-corrected Pitman-Yor draw at
/// (d, alpha + K d), combined as -sum p ln p - p* ln p* + p* H_tail.
double sample_posterior_entropy(const Multiplicities& m, const PYParams& params,
                                Rng& rng, double tail_var_tol = 1e-4);
double sample_posterior_entropy(const CountData& c, const PYParams& params,
                                Rng& rng, double tail_var_tol = 1e-4);

/// Exact draws from the full PYM posterior over H: picks a (d, alpha) grid
/// node with probability equal to its normalized posterior weight, then
/// samples the conditional posterior there. Same precondition as
/// pym_estimate (at least two coincidences).
std::vector<double> sample_pym_posterior(const Multiplicities& m,
                                         const PymConfig& cfg,
                                         std::size_t n_draws, Rng& rng);
std::vector<double> sample_pym_posterior(const CountData& c,
                                         const PymConfig& cfg,
                                         std::size_t n_draws, Rng& rng);

/// Draws from an already computed posterior grid.
std::vector<double> sample_pym_posterior(const PymGrid& grid,
                                         const Multiplicities& m,
                                         std::size_t n_draws, Rng& rng);

}  // namespace pymentropy
