// Apache License, Version 2.0, refer to LICENSE.txt

#include "pymentropy/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pymentropy/errors.hpp"
#include "pymentropy/sampler.hpp"

namespace pymentropy {

namespace {

double entropy_of(const std::vector<double>& p) {
  long double h = 0.0L;
  for (double w : p) {
    if (w > 0.0) {
      h -= static_cast<long double>(w) * std::log(static_cast<long double>(w));
    }
  }
  return static_cast<double>(h);
}

void normalize(std::vector<double>& p) {
  long double sum = 0.0L;
  for (double w : p) {
    sum += w;
  }
  for (double& w : p) {
    w = static_cast<double>(w / sum);
  }
}

}  // namespace

KnownDistribution build_uniform(std::uint64_t support) {
  if (support < 1) {
    throw std::invalid_argument("uniform: support size must be >= 1");
  }
  KnownDistribution dist;
  dist.kind = KnownDistribution::Kind::kUniform;
  dist.support = support;
  dist.probabilities.assign(support, 1.0 / static_cast<double>(support));
  dist.true_entropy = entropy_of(dist.probabilities);
  return dist;
}

KnownDistribution build_power_law(double exponent, std::uint64_t support) {
  if (!(exponent > 0.0) || support < 1) {
    throw std::invalid_argument(
        "powerlaw: need exponent > 0 and support >= 1");
  }
  KnownDistribution dist;
  dist.kind = KnownDistribution::Kind::kPowerLaw;
  dist.exponent = exponent;
  dist.support = support;
  dist.probabilities.resize(support);
  for (std::uint64_t i = 0; i < support; ++i) {
    dist.probabilities[i] = std::pow(static_cast<double>(i + 1), -exponent);
  }
  normalize(dist.probabilities);
  dist.true_entropy = entropy_of(dist.probabilities);
  return dist;
}

KnownDistribution build_poisson(double rate) {
  if (!(rate > 0.0)) {
    throw std::invalid_argument("poisson: rate must be positive");
  }
  KnownDistribution dist;
  dist.kind = KnownDistribution::Kind::kPoisson;
  dist.rate = rate;
  double log_pk = -rate;  // ln p(0)
  long double cum = 0.0L;
  for (std::uint64_t k = 0; cum < 1.0L - 1e-15L; ++k) {
    if (k > 0) {
      log_pk += std::log(rate) - std::log(static_cast<double>(k));
    }
    const double pk = std::exp(log_pk);
    dist.probabilities.push_back(pk);
    cum += pk;
    if (k > 10'000'000) {
      throw std::invalid_argument("poisson: truncation did not terminate");
    }
  }
  normalize(dist.probabilities);
  dist.support = dist.probabilities.size();
  dist.true_entropy = entropy_of(dist.probabilities);
  return dist;
}

KnownDistribution build_py(double discount, double concentration) {
  KnownDistribution dist;
  dist.kind = KnownDistribution::Kind::kPyDraw;
  dist.py_params = PYParams(discount, concentration);
  return dist;
}

KnownDistribution parse_distribution_spec(const std::string& spec) {
  std::vector<std::string> parts;
  std::size_t pos = 0;
  while (pos <= spec.size()) {
    const std::size_t next = spec.find(':', pos);
    if (next == std::string::npos) {
      parts.push_back(spec.substr(pos));
      break;
    }
    parts.push_back(spec.substr(pos, next - pos));
    pos = next + 1;
  }
  auto as_double = [&](const std::string& s) {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) {
      throw std::invalid_argument("distribution spec: bad number '" + s + "'");
    }
    return v;
  };
  auto as_u64 = [&](const std::string& s) {
    const double v = as_double(s);
    if (!(v >= 1.0) || v != std::floor(v)) {
      throw std::invalid_argument("distribution spec: bad size '" + s + "'");
    }
    return static_cast<std::uint64_t>(v);
  };

  try {
    if (parts.size() == 2 && parts[0] == "uniform") {
      return build_uniform(as_u64(parts[1]));
    }
    if (parts.size() == 3 && parts[0] == "powerlaw") {
      return build_power_law(as_double(parts[1]), as_u64(parts[2]));
    }
    if (parts.size() == 2 && parts[0] == "poisson") {
      return build_poisson(as_double(parts[1]));
    }
    if (parts.size() == 3 && parts[0] == "py") {
      return build_py(as_double(parts[1]), as_double(parts[2]));
    }
  } catch (const std::domain_error& e) {
    throw std::invalid_argument(std::string("distribution spec: ") + e.what());
  } catch (const std::logic_error& e) {
    throw std::invalid_argument(std::string("distribution spec: ") + e.what());
  }
  throw std::invalid_argument("unrecognized distribution spec '" + spec +
                              "' (expected uniform:S, powerlaw:a:S, "
                              "poisson:rate, or py:d:alpha)");
}

KnownDistribution realize(const KnownDistribution& dist, Rng& rng) {
  if (dist.realized()) {
    return dist;
  }
  KnownDistribution out = dist;
  // Break sticks until the unassigned tail is below 1e-12.
  double rem = 1.0;
  const double d = dist.py_params.discount;
  const double alpha = dist.py_params.concentration;
  std::size_t i = 0;
  while (rem >= 1e-12) {
    if (i >= kStickCap) {
      throw TailTruncationError(
          "realize: stick cap exceeded while realizing a Pitman-Yor draw");
    }
    ++i;
    const double beta =
        rng.beta(1.0 - d, alpha + static_cast<double>(i) * d);
    const double piece = rem * beta;
    out.probabilities.push_back(piece);
    rem -= piece;
  }
  out.true_entropy = entropy_of(out.probabilities);
  return out;
}

CountData draw_counts(const KnownDistribution& dist, std::uint64_t n,
                      Rng& rng) {
  const KnownDistribution concrete = realize(dist, rng);
  std::vector<double> cdf(concrete.probabilities.size());
  long double acc = 0.0L;
  for (std::size_t i = 0; i < cdf.size(); ++i) {
    acc += concrete.probabilities[i];
    cdf[i] = static_cast<double>(acc);
  }
  std::vector<std::uint64_t> tally(cdf.size(), 0);
  for (std::uint64_t j = 0; j < n; ++j) {
    const double u = rng.uniform();
    const std::size_t idx = static_cast<std::size_t>(
        std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    ++tally[std::min(idx, cdf.size() - 1)];
  }
  std::vector<std::pair<std::string, std::uint64_t>> pairs;
  for (std::size_t i = 0; i < tally.size(); ++i) {
    if (tally[i] > 0) {
      pairs.emplace_back("s" + std::to_string(i), tally[i]);
    }
  }
  return CountData::from_counts(pairs);
}

}  // namespace pymentropy
