// Apache License, Version 2.0, refer to LICENSE.txt

#include "pymentropy/sampler.hpp"

#include <algorithm>
#include <cmath>

#include "pymentropy/errors.hpp"

namespace pymentropy {

namespace {

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

}  // namespace

WeightSample stick_break(const PYParams& params, std::size_t n_sticks,
                         Rng& rng) {
  WeightSample out;
  out.weights.reserve(std::min<std::size_t>(n_sticks, 4096));
  out.remaining_mass = 1.0;
  const double d = params.discount;
  for (std::size_t i = 1; i <= n_sticks; ++i) {
    const double beta =
        rng.beta(1.0 - d, params.concentration + static_cast<double>(i) * d);
    const double piece = out.remaining_mass * beta;
    out.weights.push_back(piece);
    out.remaining_mass -= piece;
    if (out.remaining_mass <= 0.0) {
      out.remaining_mass = 0.0;
      break;
    }
  }
  return out;
}

double sample_prior_entropy(const PYParams& params, double tail_var_tol,
                            Rng& rng) {
  if (!(tail_var_tol > 0.0)) {
    throw std::domain_error("sample_prior_entropy: tail_var_tol must be > 0");
  }
  const double d = params.discount;
  const double alpha = params.concentration;

  double head_entropy = 0.0;
  double rem = 1.0;
  std::size_t n = 0;
  std::size_t chunk = 64;
  for (;;) {
    // Tail after n sticks is PY(d, alpha + n d) scaled by rem; its entropy
    // contribution has variance rem^2 * Var[H | d, alpha + n d].
    if (rem < 1e-12) {
      break;
    }
    const PYParams tail(d, alpha + static_cast<double>(n) * d);
    if (py_prior_variance(tail) * rem * rem < tail_var_tol) {
      break;
    }
    if (n >= kStickCap) {
      throw TailTruncationError(
          "sample_prior_entropy: stick cap exceeded before the tail entropy "
          "variance fell below tolerance");
    }
    const std::size_t upto = std::min(n + chunk, kStickCap);
    for (; n < upto; ) {
      ++n;
      const double beta =
          rng.beta(1.0 - d, alpha + static_cast<double>(n) * d);
      const double piece = rem * beta;
      head_entropy -= xlogx(piece);
      rem -= piece;
      if (rem <= 0.0) {
        rem = 0.0;
        break;
      }
    }
    if (rem <= 0.0) {
      break;
    }
    chunk *= 2;
  }

  if (rem > 0.0) {
    const PYParams tail(d, alpha + static_cast<double>(n) * d);
    head_entropy += -xlogx(rem) + rem * py_prior_mean(tail);
  }
  return head_entropy;
}

double sample_posterior_entropy(const Multiplicities& m, const PYParams& params,
                                Rng& rng, double tail_var_tol) {
  if (m.total() == 0) {
    throw EmptyDataError("sample_posterior_entropy: no samples");
  }
  const double d = params.discount;
  const double k = static_cast<double>(m.distinct());
  const double tail_shape = params.concentration + k * d;

  // Joint Dirichlet over the observed symbols and the tail mass, drawn as
  // normalized gammas.
  double sum = 0.0;
  std::vector<double> draws;
  draws.reserve(m.distinct());
  for (const auto& [freq, count] : m.entries()) {
    const double shape = static_cast<double>(freq) - d;
    for (std::uint64_t i = 0; i < count; ++i) {
      const double g = rng.gamma(shape);
      draws.push_back(g);
      sum += g;
    }
  }
  const double g_tail = rng.gamma(tail_shape);
  sum += g_tail;

  double h = 0.0;
  for (double g : draws) {
    h -= xlogx(g / sum);
  }
  const double p_tail = g_tail / sum;
  h -= xlogx(p_tail);
  if (p_tail > 0.0) {
    h += p_tail *
         sample_prior_entropy(PYParams(d, tail_shape), tail_var_tol, rng);
  }
  return h;
}

double sample_posterior_entropy(const CountData& c, const PYParams& params,
                                Rng& rng, double tail_var_tol) {
  return sample_posterior_entropy(c.to_multiplicities(), params, rng,
                                  tail_var_tol);
}

std::vector<double> sample_pym_posterior(const PymGrid& grid,
                                         const Multiplicities& m,
                                         std::size_t n_draws, Rng& rng) {
  std::vector<double> cdf;
  cdf.reserve(grid.nodes.size());
  double acc = 0.0;
  for (const auto& node : grid.nodes) {
    acc += node.weight;
    cdf.push_back(acc);
  }
  std::vector<double> samples;
  samples.reserve(n_draws);
  for (std::size_t i = 0; i < n_draws; ++i) {
    const double u = rng.uniform() * acc;
    const std::size_t idx = static_cast<std::size_t>(
        std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    const auto& node = grid.nodes[std::min(idx, grid.nodes.size() - 1)];
    samples.push_back(sample_posterior_entropy(m, node.params, rng));
  }
  return samples;
}

std::vector<double> sample_pym_posterior(const Multiplicities& m,
                                         const PymConfig& cfg,
                                         std::size_t n_draws, Rng& rng) {
  const PymGrid grid = compute_pym_grid(m, cfg);
  return sample_pym_posterior(grid, m, n_draws, rng);
}

std::vector<double> sample_pym_posterior(const CountData& c,
                                         const PymConfig& cfg,
                                         std::size_t n_draws, Rng& rng) {
  return sample_pym_posterior(c.to_multiplicities(), cfg, n_draws, rng);
}

}  // namespace pymentropy
