// Apache License, Version 2.0, refer to LICENSE.txt

#include "pymentropy/dirichlet_nsb.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "pymentropy/errors.hpp"
#include "pymentropy/quadrature.hpp"
#include "pymentropy/special_functions.hpp"

namespace pymentropy {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_alphabet(const Multiplicities& m, std::uint64_t alphabet_size) {
  if (alphabet_size < m.distinct()) {
    throw InconsistentAlphabetError(
        "alphabet size is smaller than the number of observed symbols");
  }
}

std::vector<PseudocountGroup> posterior_groups(const Multiplicities& m,
                                               std::uint64_t alphabet_size,
                                               double alpha) {
  std::vector<PseudocountGroup> groups;
  groups.reserve(m.entries().size() + 1);
  for (const auto& [freq, count] : m.entries()) {
    groups.push_back({static_cast<double>(freq) + alpha,
                      static_cast<double>(count)});
  }
  const double unobserved =
      static_cast<double>(alphabet_size) - static_cast<double>(m.distinct());
  if (unobserved > 0.0) {
    groups.push_back({alpha, unobserved});
  }
  return groups;
}

}  // namespace

DirPosteriorMoments dirichlet_entropy_moments(
    const std::vector<PseudocountGroup>& groups) {
  double total = 0.0;
  for (const auto& g : groups) {
    total += g.multiplicity * g.value;
  }
  if (!(total > 0.0)) {
    return {0.0, 0.0, 0.0};  // point mass, zero entropy
  }

  const double psi_t1 = digamma(total + 1.0);
  const double psi_t2 = digamma(total + 2.0);
  const double tri_t2 = trigamma(total + 2.0);

  // mean = psi0(T+1) - sum_i (v_i / T) psi0(v_i + 1)
  double weighted_psi = 0.0;
  for (const auto& g : groups) {
    if (g.value > 0.0) {
      weighted_psi += g.multiplicity * g.value * digamma(g.value + 1.0);
    }
  }
  const double mean = psi_t1 - weighted_psi / total;

  // Cross terms of the second moment collapse to sums of
  // u_i = v_i (psi0(v_i+1) - psi0(T+2)) over groups.
  double sum_u = 0.0, sum_u_sq = 0.0, sum_v_sq = 0.0, j_terms = 0.0;
  for (const auto& g : groups) {
    if (g.value <= 0.0) {
      continue;
    }
    const double u = g.value * (digamma(g.value + 1.0) - psi_t2);
    sum_u += g.multiplicity * u;
    sum_u_sq += g.multiplicity * u * u;
    sum_v_sq += g.multiplicity * g.value * g.value;
    const double dpsi = digamma(g.value + 2.0) - psi_t2;
    j_terms += g.multiplicity * g.value * (g.value + 1.0) *
               (dpsi * dpsi + trigamma(g.value + 2.0) - tri_t2);
  }
  const double cross = (sum_u * sum_u - sum_u_sq) -
                       tri_t2 * (total * total - sum_v_sq);
  const double second = (cross + j_terms) / (total * (total + 1.0));

  double variance = second - mean * mean;
  assert(variance > -1e-9);
  variance = std::max(variance, 0.0);
  return {mean, second, variance};
}

double plugin_entropy(const Multiplicities& m) {
  if (m.total() == 0) {
    throw EmptyDataError("plugin_entropy: no samples");
  }
  const double n = static_cast<double>(m.total());
  double h = 0.0;
  for (const auto& [freq, count] : m.entries()) {
    const double p = static_cast<double>(freq) / n;
    h -= static_cast<double>(count) * p * std::log(p);
  }
  return std::max(h, 0.0);
}

double plugin_entropy(const CountData& c) {
  return plugin_entropy(c.to_multiplicities());
}

double miller_madow(const Multiplicities& m) {
  if (m.total() == 0) {
    throw EmptyDataError("miller_madow: no samples");
  }
  return plugin_entropy(m) +
         (static_cast<double>(m.distinct()) - 1.0) /
             (2.0 * static_cast<double>(m.total()));
}

double miller_madow(const CountData& c) {
  return miller_madow(c.to_multiplicities());
}

DirPosteriorMoments dir_posterior_moments(const Multiplicities& m,
                                          std::uint64_t alphabet_size,
                                          double alpha) {
  if (!(alpha > 0.0)) {
    throw std::domain_error("dir_posterior_moments: alpha must be positive");
  }
  check_alphabet(m, alphabet_size);
  return dirichlet_entropy_moments(posterior_groups(m, alphabet_size, alpha));
}

DirPosteriorMoments dir_posterior_moments(const CountData& c,
                                          std::uint64_t alphabet_size,
                                          double alpha) {
  return dir_posterior_moments(c.to_multiplicities(), alphabet_size, alpha);
}

double nsb_weight(double alpha, std::uint64_t alphabet_size) {
  if (!(alpha > 0.0)) {
    throw std::domain_error("nsb_weight: alpha must be positive");
  }
  const double a = static_cast<double>(alphabet_size);
  const double w = a * trigamma(a * alpha + 1.0) - trigamma(alpha + 1.0);
  return std::max(w, 0.0);
}

double polya_log_evidence(const Multiplicities& m, std::uint64_t alphabet_size,
                          double alpha) {
  if (!(alpha > 0.0)) {
    throw std::domain_error("polya_log_evidence: alpha must be positive");
  }
  check_alphabet(m, alphabet_size);
  const double a = static_cast<double>(alphabet_size);
  const double n = static_cast<double>(m.total());
  const double k = static_cast<double>(m.distinct());
  // Unobserved bins contribute Gamma(alpha) each, cancelling all but K of
  // the Gamma(alpha)^A normalizer terms.
  double lp = log_gamma(a * alpha) - k * log_gamma(alpha) -
              log_gamma(n + a * alpha) + log_gamma(n + 1.0);
  for (const auto& [freq, count] : m.entries()) {
    const double f = static_cast<double>(freq);
    lp += static_cast<double>(count) *
          (log_gamma(f + alpha) - log_gamma(f + 1.0));
  }
  return lp;
}

double polya_log_evidence(const CountData& c, std::uint64_t alphabet_size,
                          double alpha) {
  return polya_log_evidence(c.to_multiplicities(), alphabet_size, alpha);
}

namespace {

struct NsbIntegral {
  double mean = 0.0;
  double variance = 0.0;
  double log_norm = -kInf;
  double map_alpha = 0.0;
  std::size_t nodes = 0;
};

// Integrates the posterior over t = ln(alpha) on [-20, 20] with a composite
// Gauss-Legendre rule of `panels` panels.
NsbIntegral nsb_pass(const Multiplicities& m, std::uint64_t alphabet_size,
                     int panels) {
  constexpr double kTLo = -20.0, kTHi = 20.0;
  constexpr int kNodesPerPanel = 12;

  std::vector<double> log_w, e_h, var_h, alphas;
  const double width = (kTHi - kTLo) / panels;
  for (int p = 0; p < panels; ++p) {
    const QuadratureRule rule = gauss_legendre(
        kNodesPerPanel, kTLo + p * width, kTLo + (p + 1) * width);
    for (int i = 0; i < kNodesPerPanel; ++i) {
      const double t = rule.nodes[i];
      const double alpha = std::exp(t);
      const double w = nsb_weight(alpha, alphabet_size);
      if (w <= 0.0) {
        continue;
      }
      // d alpha = alpha dt folds into the log weight as +t.
      const double lw = polya_log_evidence(m, alphabet_size, alpha) +
                        std::log(w) + t + std::log(rule.weights[i]);
      const DirPosteriorMoments mom =
          dir_posterior_moments(m, alphabet_size, alpha);
      log_w.push_back(lw);
      e_h.push_back(mom.mean);
      var_h.push_back(mom.variance);
      alphas.push_back(alpha);
    }
  }
  if (log_w.empty()) {
    throw NumericalError("nsb_estimate: integrand vanished everywhere");
  }

  const std::size_t arg = static_cast<std::size_t>(
      std::max_element(log_w.begin(), log_w.end()) - log_w.begin());
  const double lmax = log_w[arg];
  double z = 0.0, mean_acc = 0.0, second_acc = 0.0;
  for (std::size_t i = 0; i < log_w.size(); ++i) {
    const double w = std::exp(log_w[i] - lmax);
    z += w;
    mean_acc += w * e_h[i];
    second_acc += w * (var_h[i] + e_h[i] * e_h[i]);
  }
  NsbIntegral out;
  out.mean = mean_acc / z;
  out.variance = std::max(second_acc / z - out.mean * out.mean, 0.0);
  out.log_norm = lmax + std::log(z);
  out.map_alpha = alphas[arg];
  out.nodes = log_w.size();
  return out;
}

}  // namespace

EntropyEstimate nsb_estimate(const Multiplicities& m,
                             std::uint64_t alphabet_size) {
  check_alphabet(m, alphabet_size);
  if (alphabet_size == 0) {
    throw InconsistentAlphabetError("nsb_estimate: empty alphabet");
  }
  if (alphabet_size == 1) {
    // one-symbol alphabet: H is identically zero
    EntropyEstimate est;
    est.std_dev = 0.0;
    est.map_d = 0.0;
    est.map_alpha = 1.0;
    est.log_evidence_at_map = 0.0;
    return est;
  }

  NsbIntegral prev = nsb_pass(m, alphabet_size, 32);
  bool converged = false;
  NsbIntegral cur = prev;
  for (int panels = 64; panels <= 512; panels *= 2) {
    cur = nsb_pass(m, alphabet_size, panels);
    if (std::abs(cur.mean - prev.mean) <= 1e-9 * (1.0 + std::abs(cur.mean)) &&
        std::abs(cur.variance - prev.variance) <=
            1e-9 * (1.0 + cur.variance)) {
      converged = true;
      break;
    }
    prev = cur;
  }
  if (!converged) {
    throw NumericalError(
        "nsb_estimate: log-alpha quadrature did not stabilize at 512 panels");
  }

  EntropyEstimate est;
  est.mean = cur.mean;
  est.std_dev = std::sqrt(cur.variance);
  est.map_d = 0.0;
  est.map_alpha = cur.map_alpha;
  est.log_evidence_at_map = polya_log_evidence(m, alphabet_size, cur.map_alpha);
  est.diagnostics.alpha_lo = std::exp(-20.0);
  est.diagnostics.alpha_hi = std::exp(20.0);
  est.diagnostics.node_count = cur.nodes;
  est.diagnostics.mass_captured = 1.0;
  return est;
}

EntropyEstimate nsb_estimate(const CountData& c, std::uint64_t alphabet_size) {
  return nsb_estimate(c.to_multiplicities(), alphabet_size);
}

EntropyEstimate ansb_estimate(const Multiplicities& m) {
  const double n = static_cast<double>(m.total());
  const double coincidences =
      static_cast<double>(m.total()) - static_cast<double>(m.distinct());
  if (m.total() == 0) {
    throw EmptyDataError("ansb_estimate: no samples");
  }
  if (coincidences < 1.0) {
    throw NoCoincidencesError(
        "ansb_estimate: at least one coincidence (N - K >= 1) is required");
  }
  EntropyEstimate est;
  est.mean = 2.0 * std::log(n) + digamma(coincidences) - digamma(1.0) -
             std::log(2.0);
  return est;
}

EntropyEstimate ansb_estimate(const CountData& c) {
  return ansb_estimate(c.to_multiplicities());
}

}  // namespace pymentropy
