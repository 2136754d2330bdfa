// Apache License, Version 2.0, refer to LICENSE.txt

#include "pymentropy/pym.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "pymentropy/errors.hpp"
#include "pymentropy/quadrature.hpp"
#include "pymentropy/special_functions.hpp"

namespace pymentropy {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kAlphaEps = 1e-6;   // offset of the ln(alpha + eps) transform
constexpr double kLogitBound = 18.420680743952367;  // logit(1 - 1e-8)

double logit(double p) { return std::log(p / (1.0 - p)); }
double sigmoid(double t) { return 1.0 / (1.0 + std::exp(-t)); }

double pairwise_sum(const std::vector<double>& v, std::size_t lo,
                    std::size_t hi) {
  if (hi - lo <= 8) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      s += v[i];
    }
    return s;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

double pairwise_sum(const std::vector<double>& v) {
  return v.empty() ? 0.0 : pairwise_sum(v, 0, v.size());
}

double log_q_gamma(double gamma, const PymConfig& cfg) {
  switch (cfg.gamma_prior) {
    case GammaPrior::kDefaultExp:
      return (gamma < 1.0) ? -10.0 / (1.0 - gamma) : -kInf;
    case GammaPrior::kFlat:
      return 0.0;
    case GammaPrior::kCustomTable: {
      const auto& table = cfg.gamma_prior_table;
      if (gamma < table.front().first || gamma > table.back().first) {
        return -kInf;
      }
      auto hi = std::lower_bound(
          table.begin(), table.end(), gamma,
          [](const auto& knot, double g) { return knot.first < g; });
      if (hi == table.begin()) {
        return table.front().second > 0.0 ? std::log(table.front().second)
                                          : -kInf;
      }
      const auto lo = hi - 1;
      const double span = hi->first - lo->first;
      const double t = (span > 0.0) ? (gamma - lo->first) / span : 0.0;
      const double q = lo->second + t * (hi->second - lo->second);
      return q > 0.0 ? std::log(q) : -kInf;
    }
  }
  return -kInf;
}

}  // namespace

void PymConfig::validate() const {
  if (grid_size < 5) {
    throw std::invalid_argument("PymConfig: grid_size must be at least 5");
  }
  if (!(std_span > 0.0)) {
    throw std::invalid_argument("PymConfig: std_span must be positive");
  }
  if (!(alpha_cap > 0.0)) {
    throw std::invalid_argument("PymConfig: alpha_cap must be positive");
  }
  if (gamma_prior == GammaPrior::kCustomTable && gamma_prior_table.empty()) {
    throw std::invalid_argument("PymConfig: custom gamma prior table empty");
  }
}

HGammaParams to_hgamma(const PYParams& params) {
  if (!(params.concentration >= 0.0)) {
    throw std::domain_error("to_hgamma: requires alpha >= 0");
  }
  const double h =
      digamma(params.concentration + 1.0) - digamma(1.0 - params.discount);
  if (!(h > 0.0)) {
    throw std::domain_error("to_hgamma: degenerate point d = alpha = 0");
  }
  const double u = digamma(1.0) - digamma(1.0 - params.discount);
  return {h, u / h};
}

PYParams to_dalpha(const HGammaParams& hg) {
  if (!(hg.h > 0.0) || !(hg.gamma >= 0.0)) {
    throw std::domain_error("to_dalpha: requires h > 0 and gamma >= 0");
  }
  const double psi1 = digamma(1.0);
  double alpha = inverse_digamma(hg.h * (1.0 - hg.gamma) + psi1) - 1.0;
  double d = 1.0 - inverse_digamma(psi1 - hg.h * hg.gamma);
  if (std::abs(alpha) < 1e-12) {
    alpha = 0.0;
  }
  if (std::abs(d) < 1e-12) {
    d = 0.0;
  }
  if (!(d >= 0.0) || !(d < 1.0) || !(alpha >= 0.0)) {
    throw std::domain_error("to_dalpha: image outside d in [0,1), alpha >= 0");
  }
  return PYParams(d, alpha);
}

Matrix2 hgamma_jacobian(const PYParams& params) {
  const double d = params.discount;
  const double alpha = params.concentration;
  const double h = digamma(alpha + 1.0) - digamma(1.0 - d);
  if (!(h != 0.0)) {
    throw std::domain_error("hgamma_jacobian: degenerate point d = alpha = 0");
  }
  const double u = digamma(1.0) - digamma(1.0 - d);
  const double tri_d = trigamma(1.0 - d);
  const double tri_a = trigamma(alpha + 1.0);
  Matrix2 j;
  j.m00 = tri_d;                            // dh / dd
  j.m01 = tri_a;                            // dh / dalpha
  j.m10 = tri_d * (h - u) / (h * h);        // dgamma / dd
  j.m11 = -u * tri_a / (h * h);             // dgamma / dalpha
  return j;
}

double log_prior_density(const PYParams& params, const PymConfig& cfg) {
  const double d = params.discount;
  const double alpha = params.concentration;
  if (alpha < 0.0) {
    return -kInf;  // the mixture prior lives on alpha >= 0
  }
  const double h = digamma(alpha + 1.0) - digamma(1.0 - d);
  if (!(h > 0.0)) {
    // Density diverges toward the d = alpha = 0 corner; every integrand
    // excludes it through vanishing evidence.
    return kInf;
  }
  const double gamma = (digamma(1.0) - digamma(1.0 - d)) / h;
  const double lq = log_q_gamma(gamma, cfg);
  if (lq == -kInf) {
    return -kInf;
  }
  return lq + std::log(trigamma(1.0 - d)) + std::log(trigamma(alpha + 1.0)) -
         std::log(h);
}

double log_prior_density_dp(double alpha) {
  if (alpha < 0.0) {
    return -kInf;
  }
  return std::log(trigamma(alpha + 1.0));
}

namespace {

// ---------------------------------------------------------------------------
// MAP search in theta = (logit d, ln(alpha + eps)).

struct ThetaBox {
  double lo0, hi0, lo1, hi1;
  bool contains(const std::array<double, 2>& t) const {
    return t[0] >= lo0 && t[0] <= hi0 && t[1] >= lo1 && t[1] <= hi1;
  }
};

PYParams theta_to_params(const std::array<double, 2>& t) {
  const double d = sigmoid(t[0]);
  const double alpha = std::max(std::exp(t[1]) - kAlphaEps, 0.0);
  return PYParams(d, alpha);
}

using Objective = std::function<double(const std::array<double, 2>&)>;

struct SimplexResult {
  std::array<double, 2> point{};
  double value = -kInf;
  bool converged = false;
};

// Nelder-Mead, maximizing. Deterministic for a given start.
SimplexResult nelder_mead(const Objective& f, std::array<double, 2> start,
                          double step, int max_iter) {
  std::array<std::array<double, 2>, 3> x{
      start,
      std::array<double, 2>{start[0] + step, start[1]},
      std::array<double, 2>{start[0], start[1] + step}};
  std::array<double, 3> fx{f(x[0]), f(x[1]), f(x[2])};

  auto order = [&] {
    // descending by value: x[0] best
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2 - i; ++j) {
        if (fx[j] < fx[j + 1]) {
          std::swap(fx[j], fx[j + 1]);
          std::swap(x[j], x[j + 1]);
        }
      }
    }
  };

  SimplexResult res;
  for (int it = 0; it < max_iter; ++it) {
    order();
    const double spread = fx[0] - fx[2];
    const double diam = std::max(
        std::abs(x[0][0] - x[2][0]) + std::abs(x[0][1] - x[2][1]),
        std::abs(x[0][0] - x[1][0]) + std::abs(x[0][1] - x[1][1]));
    if (std::isfinite(fx[0]) &&
        (spread <= 1e-10 * (1.0 + std::abs(fx[0])) || diam <= 1e-9)) {
      res.converged = true;
      break;
    }

    const std::array<double, 2> centroid{(x[0][0] + x[1][0]) / 2.0,
                                         (x[0][1] + x[1][1]) / 2.0};
    auto blend = [&](double coef) {
      return std::array<double, 2>{
          centroid[0] + coef * (x[2][0] - centroid[0]),
          centroid[1] + coef * (x[2][1] - centroid[1])};
    };

    const auto reflected = blend(-1.0);
    const double fr = f(reflected);
    if (fr > fx[0]) {
      const auto expanded = blend(-2.0);
      const double fe = f(expanded);
      if (fe > fr) {
        x[2] = expanded;
        fx[2] = fe;
      } else {
        x[2] = reflected;
        fx[2] = fr;
      }
    } else if (fr > fx[1]) {
      x[2] = reflected;
      fx[2] = fr;
    } else {
      const auto contracted = blend(fr > fx[2] ? -0.5 : 0.5);
      const double fc = f(contracted);
      if (fc > std::max(fr, fx[2])) {
        x[2] = contracted;
        fx[2] = fc;
      } else {
        // shrink toward the best vertex
        for (int i = 1; i < 3; ++i) {
          x[i][0] = x[0][0] + 0.5 * (x[i][0] - x[0][0]);
          x[i][1] = x[0][1] + 0.5 * (x[i][1] - x[0][1]);
          fx[i] = f(x[i]);
        }
      }
    }
  }
  order();
  res.point = x[0];
  res.value = fx[0];
  return res;
}

Objective make_pym_objective(const Multiplicities& m, const PymConfig& cfg,
                             const ThetaBox& box) {
  return [&m, cfg, box](const std::array<double, 2>& t) -> double {
    if (!box.contains(t)) {
      return -kInf;
    }
    const PYParams p = theta_to_params(t);
    const double ev = py_log_evidence(m, p);
    if (ev == -kInf) {
      return -kInf;
    }
    const double prior = log_prior_density(p, cfg);
    if (!std::isfinite(prior)) {
      return -kInf;  // outside the prior support or the degenerate corner
    }
    return ev + prior;
  };
}

ThetaBox make_box(const PymConfig& cfg) {
  return {-kLogitBound, kLogitBound, std::log(kAlphaEps),
          std::log(cfg.alpha_cap + kAlphaEps)};
}

std::array<double, 2> params_to_theta(const PYParams& p) {
  const double d = std::clamp(p.discount, 1e-10, 1.0 - 1e-10);
  return {logit(d), std::log(p.concentration + kAlphaEps)};
}

}  // namespace

PYParams map_fit(const Multiplicities& m, const PymConfig& cfg) {
  cfg.validate();
  if (m.total() == 0) {
    throw EmptyDataError("map_fit: no samples");
  }
  const ThetaBox box = make_box(cfg);
  const Objective f = make_pym_objective(m, cfg, box);

  const double k = static_cast<double>(m.distinct());
  const double n = static_cast<double>(m.total());
  const std::array<PYParams, 4> starts{
      PYParams(0.001, 1.0),
      PYParams(0.3, 1.0),
      PYParams(0.001, std::max(1.0, k)),
      PYParams(0.5, std::max(0.5, n / 10.0)),
  };

  SimplexResult best;
  bool any = false;
  for (const PYParams& s : starts) {
    const SimplexResult r = nelder_mead(f, params_to_theta(s), 0.7, 1000);
    if (r.converged && (!any || r.value > best.value)) {
      best = r;
      any = true;
    }
  }
  if (!any || !std::isfinite(best.value)) {
    throw NumericalError(
        "map_fit: simplex search failed to converge from all starts "
        "(N=" + std::to_string(m.total()) + ", K=" +
        std::to_string(m.distinct()) + ")");
  }
  return theta_to_params(best.point);
}

PYParams map_fit(const CountData& c, const PymConfig& cfg) {
  return map_fit(c.to_multiplicities(), cfg);
}

Matrix2 negative_log_posterior_hessian(const Multiplicities& m,
                                       const PYParams& map,
                                       const PymConfig& cfg) {
  const ThetaBox box = make_box(cfg);
  const Objective f = make_pym_objective(m, cfg, box);
  const std::array<double, 2> t0 = params_to_theta(map);
  const double h = 1e-4;

  auto at = [&](double e0, double e1) {
    return f({t0[0] + e0, t0[1] + e1});
  };
  const double f00 = at(0, 0);
  const double d2_00 = -(at(h, 0) - 2.0 * f00 + at(-h, 0)) / (h * h);
  const double d2_11 = -(at(0, h) - 2.0 * f00 + at(0, -h)) / (h * h);
  const double d2_01 =
      -(at(h, h) - at(h, -h) - at(-h, h) + at(-h, -h)) / (4.0 * h * h);

  // Congruence back to (d, alpha): H_x = D^-1 H_theta D^-1 with the diagonal
  // transform derivative D = diag(d (1 - d), alpha + eps).
  const double dd = std::clamp(map.discount, 1e-10, 1.0 - 1e-10);
  const double j0 = dd * (1.0 - dd);
  const double j1 = map.concentration + kAlphaEps;
  Matrix2 out;
  out.m00 = d2_00 / (j0 * j0);
  out.m01 = d2_01 / (j0 * j1);
  out.m10 = out.m01;
  out.m11 = d2_11 / (j1 * j1);
  return out;
}

std::vector<WeightedNode> quadrature_grid(const PYParams& map,
                                          const Matrix2& hessian,
                                          const PymConfig& cfg,
                                          bool* fallback) {
  cfg.validate();
  const int n = cfg.grid_size;
  std::vector<WeightedNode> nodes;
  nodes.reserve(static_cast<std::size_t>(n) * n);

  const double det = hessian.m00 * hessian.m11 - hessian.m01 * hessian.m10;
  bool use_box = std::isfinite(det) && det > 0.0 && hessian.m00 > 0.0;
  double sd = 0.0, sa = 0.0;
  if (use_box) {
    // diagonal of the inverse hessian
    sd = std::sqrt(hessian.m11 / det);
    sa = std::sqrt(hessian.m00 / det);
    use_box = std::isfinite(sd) && std::isfinite(sa) && sd > 0.0 && sa > 0.0;
  }

  if (use_box) {
    const double d_lo = std::max(0.0, map.discount - cfg.std_span * sd);
    const double d_hi =
        std::min(1.0 - 1e-9, map.discount + cfg.std_span * sd);
    const double a_lo =
        std::max(0.0, map.concentration - cfg.std_span * sa);
    const double a_hi =
        std::min(cfg.alpha_cap, map.concentration + cfg.std_span * sa);
    use_box = d_hi > d_lo && a_hi > a_lo;
    if (use_box) {
      const QuadratureRule rd = gauss_legendre(n, d_lo, d_hi);
      const QuadratureRule ra = gauss_legendre(n, a_lo, a_hi);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          nodes.push_back({PYParams(rd.nodes[i], ra.nodes[j]),
                           rd.weights[i] * ra.weights[j]});
        }
      }
    }
  }

  if (!use_box) {
    const QuadratureRule rd = gauss_legendre(n, 0.0, 1.0);
    const QuadratureRule ra = gauss_legendre_semi_infinite(
        n, std::max(map.concentration, 1.0), cfg.alpha_cap);
    for (std::size_t i = 0; i < rd.nodes.size(); ++i) {
      for (std::size_t j = 0; j < ra.nodes.size(); ++j) {
        nodes.push_back({PYParams(rd.nodes[i], ra.nodes[j]),
                         rd.weights[i] * ra.weights[j]});
      }
    }
  }
  if (fallback != nullptr) {
    *fallback = !use_box;
  }
  return nodes;
}

namespace {

using LogPriorFn = std::function<double(const PYParams&)>;
using NodeFilter = std::function<bool(const PYParams&)>;

// Log of the integral of evidence * prior over the given nodes, restricted
// to nodes the filter accepts.
double log_posterior_mass(const Multiplicities& m,
                          const std::vector<WeightedNode>& nodes,
                          const LogPriorFn& log_prior,
                          const NodeFilter& keep) {
  std::vector<double> lw;
  lw.reserve(nodes.size());
  for (const auto& node : nodes) {
    if (!keep(node.params)) {
      continue;
    }
    const double ev = py_log_evidence(m, node.params);
    if (ev == -kInf) {
      continue;
    }
    const double pr = log_prior(node.params);
    if (!std::isfinite(pr)) {
      continue;
    }
    lw.push_back(ev + pr + std::log(node.quad_weight));
  }
  if (lw.empty()) {
    return -kInf;
  }
  const double lmax = *std::max_element(lw.begin(), lw.end());
  for (double& v : lw) {
    v = std::exp(v - lmax);
  }
  return lmax + std::log(pairwise_sum(lw));
}

PymGrid assemble_grid(const Multiplicities& m, const PYParams& map,
                      const std::vector<WeightedNode>& nodes,
                      const LogPriorFn& log_prior, bool fallback,
                      const std::vector<WeightedNode>& full_domain_nodes) {
  PymGrid grid;
  grid.map = map;
  grid.log_evidence_at_map = py_log_evidence(m, map);
  grid.diagnostics.fallback_grid = fallback;
  grid.diagnostics.node_count = nodes.size();

  double d_lo = kInf, d_hi = -kInf, a_lo = kInf, a_hi = -kInf;
  std::vector<double> lw(nodes.size(), -kInf);
  std::vector<PosteriorMoments> moments(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const PYParams& p = nodes[i].params;
    d_lo = std::min(d_lo, p.discount);
    d_hi = std::max(d_hi, p.discount);
    a_lo = std::min(a_lo, p.concentration);
    a_hi = std::max(a_hi, p.concentration);
    const double ev = py_log_evidence(m, p);
    if (ev == -kInf) {
      continue;
    }
    const double pr = log_prior(p);
    if (!std::isfinite(pr)) {
      continue;
    }
    lw[i] = ev + pr + std::log(nodes[i].quad_weight);
    moments[i] = py_posterior_moments(m, p);
  }
  grid.diagnostics.d_lo = d_lo;
  grid.diagnostics.d_hi = d_hi;
  grid.diagnostics.alpha_lo = a_lo;
  grid.diagnostics.alpha_hi = a_hi;

  const double lmax = *std::max_element(lw.begin(), lw.end());
  if (!std::isfinite(lmax)) {
    throw NumericalError("posterior weight vanished on every grid node");
  }
  std::vector<double> w(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    w[i] = std::exp(lw[i] - lmax);
  }
  const double z = pairwise_sum(w);
  if (!(z > 0.0) || !std::isfinite(z)) {
    throw NumericalError("posterior normalization failed");
  }

  grid.nodes.reserve(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (w[i] <= 0.0) {
      continue;
    }
    grid.nodes.push_back(
        {nodes[i].params, w[i] / z, moments[i].mean, moments[i].variance});
  }

  if (fallback) {
    grid.diagnostics.mass_captured = 1.0;
  } else {
    // Mass outside the box, from the reference rule restricted to exterior
    // nodes. The captured fraction is box / (box + outside), so reference
    // error only enters scaled by the (small) outside share.
    const double log_box = lmax + std::log(z);
    const double log_out = log_posterior_mass(
        m, full_domain_nodes, log_prior, [&](const PYParams& p) {
          return p.discount < d_lo || p.discount > d_hi ||
                 p.concentration < a_lo || p.concentration > a_hi;
        });
    if (log_out == -kInf) {
      grid.diagnostics.mass_captured = 1.0;
    } else {
      const double hi = std::max(log_box, log_out);
      const double total =
          hi + std::log(std::exp(log_box - hi) + std::exp(log_out - hi));
      grid.diagnostics.mass_captured = std::exp(log_box - total);
    }
  }
  grid.diagnostics.mass_warning = grid.diagnostics.mass_captured < 0.99;
  return grid;
}

EntropyEstimate estimate_from_grid(const PymGrid& grid) {
  std::vector<double> mean_terms, second_terms;
  mean_terms.reserve(grid.nodes.size());
  second_terms.reserve(grid.nodes.size());
  for (const auto& node : grid.nodes) {
    mean_terms.push_back(node.weight * node.mean);
    second_terms.push_back(node.weight *
                           (node.variance + node.mean * node.mean));
  }
  const double mean = pairwise_sum(mean_terms);
  const double variance =
      std::max(pairwise_sum(second_terms) - mean * mean, 0.0);

  EntropyEstimate est;
  est.mean = mean;
  est.std_dev = std::sqrt(variance);
  est.map_d = grid.map.discount;
  est.map_alpha = grid.map.concentration;
  est.log_evidence_at_map = grid.log_evidence_at_map;
  est.diagnostics = grid.diagnostics;
  return est;
}

void check_pym_preconditions(const Multiplicities& m) {
  if (m.total() == 0) {
    throw EmptyDataError("pym: no samples");
  }
  if (m.coincidences() < 2) {
    throw NoCoincidencesError(
        "pym: a finite estimate requires at least two coincidences "
        "(N - K >= 2); got N - K = " +
        std::to_string(m.coincidences()));
  }
}

}  // namespace

PymGrid compute_pym_grid(const Multiplicities& m, const PymConfig& cfg) {
  cfg.validate();
  check_pym_preconditions(m);

  const PYParams map = map_fit(m, cfg);
  // A MAP pinned to the d = 0 or alpha = 0 boundary has no trustworthy
  // curvature in that direction; take the full-domain rule instead.
  Matrix2 hess;
  if (map.discount > 1e-6 && map.concentration > 1e-6) {
    hess = negative_log_posterior_hessian(m, map, cfg);
  }
  bool fallback = false;
  const std::vector<WeightedNode> nodes =
      quadrature_grid(map, hess, cfg, &fallback);
  std::vector<WeightedNode> full_domain;
  if (!fallback) {
    Matrix2 singular;  // forces the semi-infinite branch
    PymConfig ref = cfg;
    ref.grid_size = 2 * cfg.grid_size;
    full_domain = quadrature_grid(map, singular, ref, nullptr);
  }
  const LogPriorFn prior = [&cfg](const PYParams& p) {
    return log_prior_density(p, cfg);
  };
  return assemble_grid(m, map, nodes, prior, fallback, full_domain);
}

namespace {

// 1D MAP on the d = 0 axis, searching over ln(alpha + eps).
double dpm_map_fit(const Multiplicities& m, const PymConfig& cfg) {
  const double lo = std::log(kAlphaEps);
  const double hi = std::log(cfg.alpha_cap + kAlphaEps);
  auto f = [&](double t) -> double {
    if (t < lo || t > hi) {
      return -kInf;
    }
    const double alpha = std::max(std::exp(t) - kAlphaEps, 0.0);
    const PYParams p(0.0, alpha);
    const double ev = py_log_evidence(m, p);
    if (ev == -kInf) {
      return -kInf;
    }
    return ev + log_prior_density_dp(alpha);
  };

  // Coarse scan then golden-section refinement.
  const int kScan = 200;
  double best_t = lo, best_f = -kInf;
  for (int i = 0; i <= kScan; ++i) {
    const double t = lo + (hi - lo) * i / kScan;
    const double v = f(t);
    if (v > best_f) {
      best_f = v;
      best_t = t;
    }
  }
  if (!std::isfinite(best_f)) {
    throw NumericalError("dpm_estimate: posterior vanished on the alpha axis");
  }
  double a = std::max(lo, best_t - (hi - lo) / kScan);
  double b = std::min(hi, best_t + (hi - lo) / kScan);
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - invphi * (b - a), x2 = a + invphi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 200 && (b - a) > 1e-12 * (1.0 + std::abs(a)); ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = f(x1);
    }
  }
  const double t_star = (f1 > f2) ? x1 : x2;
  return std::max(std::exp(t_star) - kAlphaEps, 0.0);
}

}  // namespace

PymGrid compute_dpm_grid(const Multiplicities& m, const PymConfig& cfg) {
  cfg.validate();
  check_pym_preconditions(m);

  const double alpha_map = dpm_map_fit(m, cfg);
  const PYParams map(0.0, alpha_map);

  // 1D curvature in t = ln(alpha + eps).
  const double t0 = std::log(alpha_map + kAlphaEps);
  auto f = [&](double t) {
    const double alpha = std::max(std::exp(t) - kAlphaEps, 0.0);
    const double ev = py_log_evidence(m, PYParams(0.0, alpha));
    return (ev == -kInf) ? -kInf : ev + log_prior_density_dp(alpha);
  };
  const double h = 1e-4;
  const double curv_t =
      (alpha_map > 1e-6)
          ? -(f(t0 + h) - 2.0 * f(t0) + f(t0 - h)) / (h * h)
          : 0.0;  // boundary MAP: no trustworthy curvature
  const double j = alpha_map + kAlphaEps;
  const double curv_alpha = curv_t / (j * j);

  std::vector<WeightedNode> nodes;
  bool fallback = false;
  if (std::isfinite(curv_alpha) && curv_alpha > 0.0) {
    const double sa = 1.0 / std::sqrt(curv_alpha);
    const double a_lo = std::max(0.0, alpha_map - cfg.std_span * sa);
    const double a_hi = std::min(cfg.alpha_cap, alpha_map + cfg.std_span * sa);
    if (a_hi > a_lo) {
      const QuadratureRule ra = gauss_legendre(cfg.grid_size, a_lo, a_hi);
      for (int i = 0; i < cfg.grid_size; ++i) {
        nodes.push_back({PYParams(0.0, ra.nodes[i]), ra.weights[i]});
      }
    }
  }
  if (nodes.empty()) {
    fallback = true;
    const QuadratureRule ra = gauss_legendre_semi_infinite(
        cfg.grid_size, std::max(alpha_map, 1.0), cfg.alpha_cap);
    for (std::size_t i = 0; i < ra.nodes.size(); ++i) {
      nodes.push_back({PYParams(0.0, ra.nodes[i]), ra.weights[i]});
    }
  }

  std::vector<WeightedNode> full_domain;
  if (!fallback) {
    const QuadratureRule ra = gauss_legendre_semi_infinite(
        2 * cfg.grid_size, std::max(alpha_map, 1.0), cfg.alpha_cap);
    for (std::size_t i = 0; i < ra.nodes.size(); ++i) {
      full_domain.push_back({PYParams(0.0, ra.nodes[i]), ra.weights[i]});
    }
  }
  const LogPriorFn prior = [](const PYParams& p) {
    return log_prior_density_dp(p.concentration);
  };
  return assemble_grid(m, map, nodes, prior, fallback, full_domain);
}

EntropyEstimate pym_estimate(const Multiplicities& m, const PymConfig& cfg) {
  return estimate_from_grid(compute_pym_grid(m, cfg));
}

EntropyEstimate pym_estimate(const CountData& c, const PymConfig& cfg) {
  return pym_estimate(c.to_multiplicities(), cfg);
}

EntropyEstimate dpm_estimate(const Multiplicities& m, const PymConfig& cfg) {
  return estimate_from_grid(compute_dpm_grid(m, cfg));
}

EntropyEstimate dpm_estimate(const CountData& c, const PymConfig& cfg) {
  return dpm_estimate(c.to_multiplicities(), cfg);
}

}  // namespace pymentropy
