// Apache License, Version 2.0, refer to LICENSE.txt

#include "pymentropy/synthetic.hpp"

#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "pymentropy/dirichlet_nsb.hpp"

using namespace pymentropy;

namespace {

double recompute_entropy(const std::vector<double>& p) {
  long double h = 0.0L;
  for (double w : p) {
    if (w > 0.0) {
      h -= static_cast<long double>(w) * std::log(static_cast<long double>(w));
    }
  }
  return static_cast<double>(h);
}

}  // namespace

TEST_CASE("uniform distributions") {
  const KnownDistribution u1000 = build_uniform(1000);
  CHECK(u1000.true_entropy == doctest::Approx(std::log(1000.0)).epsilon(1e-12));
  CHECK(build_uniform(1).true_entropy == doctest::Approx(0.0));
  CHECK_THROWS(build_uniform(0));
}

TEST_CASE("power law weights and entropy") {
  const KnownDistribution pl = build_power_law(1.0, 1000);
  long double sum = 0.0L;
  for (double w : pl.probabilities) {
    sum += w;
  }
  CHECK(static_cast<double>(sum) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(pl.true_entropy ==
        doctest::Approx(recompute_entropy(pl.probabilities)).epsilon(1e-12));
  // p_n proportional to 1/n
  CHECK(pl.probabilities[0] / pl.probabilities[9] ==
        doctest::Approx(10.0).epsilon(1e-12));
}

TEST_CASE("poisson truncation") {
  const KnownDistribution po = build_poisson(std::exp(1.0));
  // rate e concentrates essentially all mass in ~26 symbols
  CHECK(po.support >= 24);
  CHECK(po.support <= 27);
  long double sum = 0.0L;
  for (double w : po.probabilities) {
    sum += w;
  }
  CHECK(static_cast<double>(sum) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(po.true_entropy ==
        doctest::Approx(recompute_entropy(po.probabilities)).epsilon(1e-12));
}

TEST_CASE("spec parsing") {
  CHECK(parse_distribution_spec("uniform:1000").support == 1000);
  const KnownDistribution pl = parse_distribution_spec("powerlaw:2:10000");
  CHECK(pl.exponent == 2.0);
  CHECK(pl.support == 10000);
  const KnownDistribution py = parse_distribution_spec("py:0.25:40");
  CHECK(py.py_params.discount == 0.25);
  CHECK(py.py_params.concentration == 40.0);
  CHECK_FALSE(py.realized());
  CHECK(parse_distribution_spec("poisson:2.71828").rate ==
        doctest::Approx(2.71828));

  CHECK_THROWS_AS(parse_distribution_spec("uniform"), std::invalid_argument);
  CHECK_THROWS_AS(parse_distribution_spec("uniform:0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_distribution_spec("powerlaw:2"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_distribution_spec("py:1.2:4"), std::invalid_argument);
  CHECK_THROWS_AS(parse_distribution_spec("noise:1"), std::invalid_argument);
}

TEST_CASE("draw_counts basics") {
  Rng rng(1);
  const CountData five = draw_counts(build_uniform(1), 5, rng);
  CHECK(five.total() == 5);
  CHECK(five.distinct() == 1);
  CHECK(five.counts().begin()->second == 5);

  // law of large numbers on two symbols
  Rng rng2(2);
  const CountData big = draw_counts(build_uniform(2), 100000, rng2);
  const double sigma = std::sqrt(100000.0 * 0.25);
  for (const auto& [sym, count] : big.counts()) {
    CHECK(std::abs(static_cast<double>(count) - 50000.0) < 5.0 * sigma);
  }
}

TEST_CASE("draws are deterministic per seed") {
  Rng a(77), b(77);
  const CountData ca = draw_counts(parse_distribution_spec("py:0.3:5"), 500, a);
  const CountData cb = draw_counts(parse_distribution_spec("py:0.3:5"), 500, b);
  CHECK(ca.counts() == cb.counts());
}

TEST_CASE("realized py draws carry their own entropy") {
  Rng rng(3);
  const KnownDistribution realized =
      realize(parse_distribution_spec("py:0.25:40"), rng);
  CHECK(realized.realized());
  long double sum = 0.0L;
  for (double w : realized.probabilities) {
    sum += w;
  }
  CHECK(static_cast<double>(sum) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(realized.true_entropy ==
        doctest::Approx(recompute_entropy(realized.probabilities))
            .epsilon(1e-12));
}

TEST_CASE("plugin converges on heavy draws from a power law") {
  Rng rng(9);
  const KnownDistribution pl = build_power_law(2.0, 10000);
  const CountData c = draw_counts(pl, 1000000, rng);
  CHECK(std::abs(plugin_entropy(c) - pl.true_entropy) < 0.01);
}
