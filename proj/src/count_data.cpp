// Apache License, Version 2.0, refer to LICENSE.txt

#include "pymentropy/count_data.hpp"

#include <stdexcept>

namespace pymentropy {

Multiplicities Multiplicities::from_entries(
    const std::vector<std::pair<std::uint64_t, std::uint64_t>>& entries) {
  Multiplicities m;
  for (const auto& [freq, count] : entries) {
    if (freq == 0) {
      throw std::invalid_argument("multiplicities: frequency must be >= 1");
    }
    if (count == 0) {
      throw std::invalid_argument("multiplicities: m_k must be >= 1");
    }
    if (!m.entries_.emplace(freq, count).second) {
      throw std::invalid_argument("multiplicities: duplicate frequency");
    }
    m.total_ += freq * count;
    m.distinct_ += count;
  }
  return m;
}

std::uint64_t Multiplicities::max_frequency() const {
  return entries_.empty() ? 0 : entries_.rbegin()->first;
}

std::vector<std::uint64_t> Multiplicities::expand_counts() const {
  std::vector<std::uint64_t> counts;
  counts.reserve(distinct_);
  for (const auto& [freq, count] : entries_) {
    for (std::uint64_t i = 0; i < count; ++i) {
      counts.push_back(freq);
    }
  }
  return counts;
}

CountData CountData::from_samples(const std::vector<std::string>& symbols) {
  CountData c;
  for (const auto& s : symbols) {
    ++c.counts_[s];
  }
  c.total_ = symbols.size();
  return c;
}

CountData CountData::from_counts(
    const std::vector<std::pair<std::string, std::uint64_t>>& pairs) {
  CountData c;
  for (const auto& [symbol, count] : pairs) {
    if (count == 0) {
      throw std::invalid_argument("count data: counts must be >= 1");
    }
    if (!c.counts_.emplace(symbol, count).second) {
      throw std::invalid_argument("count data: duplicate symbol '" + symbol +
                                  "'");
    }
    c.total_ += count;
  }
  return c;
}

Multiplicities CountData::to_multiplicities() const {
  Multiplicities m;
  for (const auto& [symbol, count] : counts_) {
    ++m.entries_[count];
  }
  m.total_ = total_;
  m.distinct_ = counts_.size();
  return m;
}

}  // namespace pymentropy
