// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pymentropy/count_data.hpp"
#include "pymentropy/pitman_yor.hpp"
#include "pymentropy/rng.hpp"

namespace pymentropy {

/// A source distribution with a known entropy, used for benchmarking the
/// estimators. Explicit kinds carry their full weight vector; the py kind is
/// realized into one per seed at draw time.
struct KnownDistribution {
  enum class Kind { kUniform, kPowerLaw, kPoisson, kPyDraw };

  Kind kind = Kind::kUniform;
  std::vector<double> probabilities;  // empty for kPyDraw until realized
  double true_entropy = 0.0;          // nats; valid when probabilities set

  // spec parameters
  std::uint64_t support = 0;   // uniform / power law
  double exponent = 0.0;       // power law
  double rate = 0.0;           // poisson
  PYParams py_params;          // py draw

  bool realized() const { return !probabilities.empty(); }
};

KnownDistribution build_uniform(std::uint64_t support);
KnownDistribution build_power_law(double exponent, std::uint64_t support);
/// Poisson(rate) truncated where the cumulative mass reaches 1 - 1e-15 and
/// renormalized.
KnownDistribution build_poisson(double rate);
KnownDistribution build_py(double discount, double concentration);

/// Parses a CLI spec string: "uniform:1000", "powerlaw:2:10000",
/// "poisson:2.71828", "py:0.25:40". Throws std::invalid_argument on
/// malformed specs.
KnownDistribution parse_distribution_spec(const std::string& spec);

/// Returns a concrete weight vector. Explicit kinds return themselves; the
/// py kind stick-breaks a fresh weight vector (tail mass below 1e-12) and
/// fills in its realized entropy.
KnownDistribution realize(const KnownDistribution& dist, Rng& rng);

/// n iid draws tallied into counts. Realizes the distribution first when
/// needed.
CountData draw_counts(const KnownDistribution& dist, std::uint64_t n,
                      Rng& rng);

}  // namespace pymentropy
