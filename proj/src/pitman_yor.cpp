// Apache License, Version 2.0, refer to LICENSE.txt

#include "pymentropy/pitman_yor.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "pymentropy/dirichlet_nsb.hpp"
#include "pymentropy/errors.hpp"
#include "pymentropy/special_functions.hpp"

namespace pymentropy {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double as_double(std::uint64_t v) { return static_cast<double>(v); }

// Grouped pseudocounts (n_i - d, m_k) of the Dirichlet head of the
// posterior.
std::vector<PseudocountGroup> head_groups(const Multiplicities& m, double d) {
  std::vector<PseudocountGroup> groups;
  groups.reserve(m.entries().size());
  for (const auto& [freq, count] : m.entries()) {
    groups.push_back({as_double(freq) - d, as_double(count)});
  }
  return groups;
}

}  // namespace

PYParams::PYParams(double d, double alpha)
    : discount(d), concentration(alpha) {
  if (!(d >= 0.0) || !(d < 1.0)) {
    throw std::domain_error("PYParams: discount must lie in [0, 1)");
  }
  // alpha = -d is the degenerate single-atom boundary (zero entropy); it is
  // admitted so that (0, 0) is a valid parameter point.
  if (!(alpha >= -d)) {
    throw std::domain_error(
        "PYParams: concentration must be at least -discount");
  }
}

double py_prior_mean(const PYParams& params) {
  return digamma(params.concentration + 1.0) - digamma(1.0 - params.discount);
}

double py_prior_variance(const PYParams& params) {
  const double d = params.discount;
  const double a = params.concentration;
  const double var = (a + d) / ((a + 1.0) * (a + 1.0) * (1.0 - d)) +
                     (1.0 - d) / (a + 1.0) * trigamma(2.0 - d) -
                     trigamma(2.0 + a);
  return std::max(var, 0.0);
}

double py_posterior_mean(const Multiplicities& m, const PYParams& params) {
  if (m.empty()) {
    return py_prior_mean(params);
  }
  const double d = params.discount;
  const double a = params.concentration;
  const double n = as_double(m.total());
  const double k = as_double(m.distinct());
  double head = 0.0;
  for (const auto& [freq, count] : m.entries()) {
    const double v = as_double(freq) - d;
    head += as_double(count) * v * digamma(v + 1.0);
  }
  return digamma(a + n + 1.0) - (a + k * d) / (a + n) * digamma(1.0 - d) -
         head / (a + n);
}

double py_posterior_mean(const CountData& c, const PYParams& params) {
  return py_posterior_mean(c.to_multiplicities(), params);
}

BetaEntropyMoments beta_entropy_moments(double a, double b) {
  if (!(a >= 0.0) || !(b > 0.0)) {
    throw std::domain_error("beta_entropy_moments: need a >= 0, b > 0");
  }
  const double s = a + b;
  BetaEntropyMoments out;
  out.mean_p = a / s;
  out.mean_p_sq = a * (a + 1.0) / (s * (s + 1.0));
  out.mean_one_minus_p_sq = b * (b + 1.0) / (s * (s + 1.0));
  // E[h(p)] is the mean entropy of a two-bin Dirichlet(a, b).
  const double psi_a1 = (a > 0.0) ? digamma(a + 1.0) : 0.0;
  out.mean_h = digamma(s + 1.0) - out.mean_p * psi_a1 -
               (b / s) * digamma(b + 1.0);
  // Second entropy moment of the same two-bin Dirichlet.
  out.mean_h_sq = dirichlet_entropy_moments({{a, 1.0}, {b, 1.0}})
                      .second_moment;
  // E[p h(p)] = -E[p^2 ln p] - E[p (1-p) ln(1-p)], both moments of shifted
  // Beta densities.
  const double psi_s2 = digamma(s + 2.0);
  const double e_p2_ln_p =
      (a > 0.0) ? out.mean_p_sq * (digamma(a + 2.0) - psi_s2) : 0.0;
  const double e_p1mp_ln_1mp =
      a * b / (s * (s + 1.0)) * (digamma(b + 1.0) - psi_s2);
  out.mean_p_h = -e_p2_ln_p - e_p1mp_ln_1mp;
  return out;
}

PosteriorMoments py_posterior_moments(const Multiplicities& m,
                                      const PYParams& params) {
  if (m.empty()) {
    return {py_prior_mean(params), py_prior_variance(params)};
  }
  const double d = params.discount;
  const double alpha = params.concentration;
  const double n = as_double(m.total());
  const double k = as_double(m.distinct());
  const double a = alpha + k * d;  // tail mass pseudocount
  const double b = n - k * d;      // head mass pseudocount

  const DirPosteriorMoments head = dirichlet_entropy_moments(head_groups(m, d));
  const PYParams tail_params(d, a);
  const double tail_mean = py_prior_mean(tail_params);
  const double tail_var = py_prior_variance(tail_params);
  const BetaEntropyMoments pm = beta_entropy_moments(a, b);

  const double mean_head = head.mean;   // A
  const double mean_tail = tail_mean;   // B
  const double e_omega = (1.0 - pm.mean_p) * mean_head +
                         pm.mean_p * mean_tail + pm.mean_h;
  const double e_omega_sq =
      2.0 * pm.mean_p_h * (mean_tail - mean_head) +
      2.0 * mean_head * pm.mean_h + pm.mean_h_sq +
      pm.mean_p_sq * (mean_tail * mean_tail - 2.0 * mean_head * mean_tail) +
      2.0 * pm.mean_p * mean_head * mean_tail +
      pm.mean_one_minus_p_sq * mean_head * mean_head;

  double variance = pm.mean_one_minus_p_sq * head.variance +
                    pm.mean_p_sq * tail_var +
                    (e_omega_sq - e_omega * e_omega);
  assert(variance > -1e-9);
  variance = std::max(variance, 0.0);
  return {py_posterior_mean(m, params), variance};
}

double py_posterior_variance(const Multiplicities& m, const PYParams& params) {
  return py_posterior_moments(m, params).variance;
}

double py_posterior_variance(const CountData& c, const PYParams& params) {
  return py_posterior_variance(c.to_multiplicities(), params);
}

double py_log_evidence(const Multiplicities& m, const PYParams& params) {
  if (m.total() == 0) {
    throw EmptyDataError("py_log_evidence: no samples");
  }
  const double d = params.discount;
  const double alpha = params.concentration;
  const std::uint64_t k = m.distinct();

  // prod_{l=1}^{K-1} (alpha + l d); at d = 0 this is alpha^{K-1}, which is
  // zero evidence when alpha = 0 and K >= 2.
  double new_group_terms = 0.0;
  if (k >= 2 && d > 0.0 && k > 20000) {
    // Gamma-function shortcut for very fragmented data.
    const double r = alpha / d;
    new_group_terms = (as_double(k) - 1.0) * std::log(d) +
                      log_gamma(r + as_double(k)) - log_gamma(r + 1.0);
  } else {
    for (std::uint64_t l = 1; l < k; ++l) {
      const double factor = alpha + as_double(l) * d;
      if (!(factor > 0.0)) {
        return -kInf;
      }
      new_group_terms += std::log(factor);
    }
  }

  double count_terms = 0.0;
  const double lg1d = log_gamma(1.0 - d);
  for (const auto& [freq, count] : m.entries()) {
    count_terms +=
        as_double(count) * (log_gamma(as_double(freq) - d) - lg1d);
  }
  return new_group_terms + count_terms + log_gamma(1.0 + alpha) -
         log_gamma(alpha + as_double(m.total()));
}

double py_log_evidence(const CountData& c, const PYParams& params) {
  return py_log_evidence(c.to_multiplicities(), params);
}

double py_log_evidence_multiplicities(const Multiplicities& m,
                                      const PYParams& params) {
  double lp = py_log_evidence(m, params);
  if (lp == -kInf) {
    return lp;
  }
  const double log_m_fact = log_gamma(as_double(m.max_frequency()) + 1.0);
  for (const auto& [freq, count] : m.entries()) {
    lp -= as_double(count) * log_gamma(as_double(freq) + 1.0);
    lp += log_m_fact - log_gamma(as_double(count) + 1.0);
  }
  return lp;
}

}  // namespace pymentropy
