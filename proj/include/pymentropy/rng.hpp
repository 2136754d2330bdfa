// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <cstdint>
#include <random>

namespace pymentropy {

/// Deterministic random stream. All variate transforms are implemented here
/// rather than through <random> distributions, whose algorithms are
/// implementation-defined; a fixed seed therefore reproduces the exact same
/// stream on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Independent stream `stream_id` derived from the same base seed, for
  /// parallel draws that must not share state.
  Rng(std::uint64_t seed, std::uint64_t stream_id)
      : engine_(mix(seed ^ mix(stream_id))) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on the open interval (0, 1).
  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Standard normal (Marsaglia polar method).
  double normal();

  /// Gamma(shape, 1) via Marsaglia-Tsang squeeze; shape-boost for
  /// shape < 1. Returns 0 for shape = 0 (the degenerate point mass).
  double gamma(double shape);

  /// Beta(a, b) from two Gamma draws. Degenerate shapes map to the
  /// corresponding point mass (a = 0 -> 0, b = 0 -> 1).
  double beta(double a, double b);

 private:
  static std::uint64_t mix(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
  }

  std::mt19937_64 engine_;
};

}  // namespace pymentropy
