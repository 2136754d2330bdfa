// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "pymentropy/count_data.hpp"
#include "pymentropy/entropy_estimate.hpp"
#include "pymentropy/pitman_yor.hpp"

namespace pymentropy {

/// Transformed Pitman-Yor coordinates: h is the prior expected entropy in
/// nats, gamma in [0, 1] trades concentration against discount (gamma = 0 is
/// the Dirichlet-process axis, gamma = 1 the alpha = 0 power-law axis).
struct HGammaParams {
  double h = 0.0;
  double gamma = 0.0;
};

enum class GammaPrior {
  kDefaultExp,  // q(gamma) = exp(-10 / (1 - gamma)) on gamma < 1
  kFlat,        // q(gamma) = 1
  kCustomTable,
};

struct PymConfig {
  GammaPrior gamma_prior = GammaPrior::kDefaultExp;
  /// Knots (gamma, density) for kCustomTable, linearly interpolated,
  /// zero outside the covered range.
  std::vector<std::pair<double, double>> gamma_prior_table;
  int grid_size = 30;      // quadrature nodes per axis
  double std_span = 6.0;   // grid half-width in posterior std units
  double alpha_cap = 1e7;  // upper bound for the semi-infinite fallback

  void validate() const;  // throws std::invalid_argument
};

struct Matrix2 {
  double m00 = 0.0, m01 = 0.0;
  double m10 = 0.0, m11 = 0.0;
};

/// (d, alpha) -> (h, gamma), defined for alpha >= 0; throws at the
/// degenerate point d = alpha = 0 where h = 0.
HGammaParams to_hgamma(const PYParams& params);

/// Inverse transform. Throws std::domain_error when the image falls outside
/// d in [0, 1), alpha >= 0.
PYParams to_dalpha(const HGammaParams& hg);

/// Analytic Jacobian of (h, gamma) with respect to (d, alpha):
/// rows (dh/dd, dh/dalpha), (dgamma/dd, dgamma/dalpha).
Matrix2 hgamma_jacobian(const PYParams& params);

/// Log prior density over (d, alpha): the push-forward of flat-in-h times
/// q(gamma), i.e. ln q(gamma) + ln |det J| with
/// |det J| = psi_1(1 - d) psi_1(alpha + 1) / h. Returns -inf where q
/// vanishes.
double log_prior_density(const PYParams& params, const PymConfig& cfg);

/// One-dimensional analogue on the d = 0 axis: the push-forward of
/// flat-in-h through h(alpha), ln psi_1(alpha + 1). This is the prior
/// weight dpm_estimate integrates against.
double log_prior_density_dp(double alpha);

/// MAP of evidence times prior over d in [0, 1), alpha >= 0. Derivative-free
/// simplex search in (logit d, ln(alpha + eps)) coordinates from four fixed
/// starts. Deterministic. Throws NumericalError if no start converges.
PYParams map_fit(const Multiplicities& m, const PymConfig& cfg = {});
PYParams map_fit(const CountData& c, const PymConfig& cfg = {});

/// Curvature of the negative log posterior at `map`, finite-differenced in
/// the transformed coordinates and mapped back to (d, alpha).
Matrix2 negative_log_posterior_hessian(const Multiplicities& m,
                                       const PYParams& map,
                                       const PymConfig& cfg);

struct WeightedNode {
  PYParams params;
  double quad_weight = 0.0;
};

/// Integration nodes over (d, alpha). With a positive-definite hessian:
/// tensor Gauss-Legendre on the box map +- std_span * std per axis clipped
/// to the domain. Otherwise: Gauss-Legendre across d in [0, 1) and a
/// rational-mapped semi-infinite rule in alpha. `fallback` reports which
/// branch ran.
std::vector<WeightedNode> quadrature_grid(const PYParams& map,
                                          const Matrix2& hessian,
                                          const PymConfig& cfg,
                                          bool* fallback = nullptr);

struct PymGridNode {
  PYParams params;
  double weight = 0.0;  // normalized posterior weight
  double mean = 0.0;    // E[H | x, d, alpha]
  double variance = 0.0;
};

/// The discretized posterior over (d, alpha) with per-node conditional
/// moments; shared by the point estimate and the posterior sampler.
struct PymGrid {
  std::vector<PymGridNode> nodes;
  PYParams map;
  double log_evidence_at_map = 0.0;
  GridDiagnostics diagnostics;
};

PymGrid compute_pym_grid(const Multiplicities& m, const PymConfig& cfg = {});
PymGrid compute_dpm_grid(const Multiplicities& m, const PymConfig& cfg = {});

/// Pitman-Yor mixture estimate: posterior mean and std of H under the
/// mixture prior. Requires at least two coincidences (N - K >= 2); anything
/// less throws NoCoincidencesError.
EntropyEstimate pym_estimate(const Multiplicities& m,
                             const PymConfig& cfg = {});
EntropyEstimate pym_estimate(const CountData& c, const PymConfig& cfg = {});

/// Same pipeline restricted to the Dirichlet-process axis (d = 0), with a
/// one-dimensional quadrature in alpha.
EntropyEstimate dpm_estimate(const Multiplicities& m,
                             const PymConfig& cfg = {});
EntropyEstimate dpm_estimate(const CountData& c, const PymConfig& cfg = {});

}  // namespace pymentropy
