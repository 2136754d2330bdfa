// Apache License, Version 2.0, refer to LICENSE.txt

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace pymentropy {

/// Count-of-counts representation: entries map a frequency k >= 1 to the
/// number of symbols m_k observed exactly k times. Exchangeable estimators
/// only ever need this compression, so per-node work scales with the number
/// of distinct frequencies rather than the number of symbols.
class Multiplicities {
 public:
  Multiplicities() = default;

  /// Builds from (frequency, m_k) pairs. Frequencies and multiplicities must
  /// be positive; duplicate frequencies are rejected.
  static Multiplicities from_entries(
      const std::vector<std::pair<std::uint64_t, std::uint64_t>>& entries);

  const std::map<std::uint64_t, std::uint64_t>& entries() const {
    return entries_;
  }

  /// N = sum over k of k * m_k.
  std::uint64_t total() const { return total_; }
  /// K = sum over k of m_k.
  std::uint64_t distinct() const { return distinct_; }
  /// M, the largest observed frequency (0 when empty).
  std::uint64_t max_frequency() const;
  /// N - K, the number of repeat observations.
  std::uint64_t coincidences() const { return total_ - distinct_; }
  bool empty() const { return entries_.empty(); }

  /// Expands back to the sorted multiset of per-symbol counts.
  std::vector<std::uint64_t> expand_counts() const;

 private:
  friend class CountData;
  std::map<std::uint64_t, std::uint64_t> entries_;
  std::uint64_t total_ = 0;
  std::uint64_t distinct_ = 0;
};

/// Observed symbol counts. Zero-count symbols are never stored; symbols not
/// present are implicitly unobserved. Immutable after construction.
class CountData {
 public:
  CountData() = default;

  /// Tallies a stream of symbol ids. An empty stream is allowed.
  static CountData from_samples(const std::vector<std::string>& symbols);

  /// Builds from explicit (symbol, count) pairs; counts must be >= 1 and
  /// symbols unique.
  static CountData from_counts(
      const std::vector<std::pair<std::string, std::uint64_t>>& pairs);

  const std::map<std::string, std::uint64_t>& counts() const {
    return counts_;
  }

  std::uint64_t total() const { return total_; }                  // N
  std::uint64_t distinct() const { return counts_.size(); }       // K
  std::uint64_t coincidences() const { return total_ - counts_.size(); }
  bool empty() const { return counts_.empty(); }

  Multiplicities to_multiplicities() const;

 private:
  std::map<std::string, std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

}  // namespace pymentropy
