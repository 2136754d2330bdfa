// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <cstddef>
#include <optional>

namespace pymentropy {

/// Where the posterior integration ran and how much mass it captured.
struct GridDiagnostics {
  double d_lo = 0.0;
  double d_hi = 0.0;
  double alpha_lo = 0.0;
  double alpha_hi = 0.0;
  std::size_t node_count = 0;
  /// Grid mass relative to a full-domain reference integral; 1 when the grid
  /// already covers the full domain.
  double mass_captured = 1.0;
  bool mass_warning = false;      // mass_captured fell below 0.99
  bool fallback_grid = false;     // semi-infinite rule used instead of the
                                  // curvature-scaled box
};

/// A point estimate of entropy in nats with (when available) a posterior
/// standard deviation and the fitted hyperparameters behind it.
struct EntropyEstimate {
  double mean = 0.0;  // nats
  std::optional<double> std_dev;
  std::optional<double> map_d;
  std::optional<double> map_alpha;
  std::optional<double> log_evidence_at_map;
  GridDiagnostics diagnostics;
};

}  // namespace pymentropy
