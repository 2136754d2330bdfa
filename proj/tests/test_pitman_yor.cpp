// Apache License, Version 2.0, refer to LICENSE.txt

#include "pymentropy/pitman_yor.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "pymentropy/dirichlet_nsb.hpp"
#include "pymentropy/errors.hpp"
#include "pymentropy/special_functions.hpp"

using namespace pymentropy;

namespace {

CountData counts(std::vector<std::pair<std::string, std::uint64_t>> pairs) {
  return CountData::from_counts(pairs);
}

double beta_density(double x, double omx, double a, double b) {
  return std::exp((a - 1.0) * std::log(x) + (b - 1.0) * std::log(omx) -
                  log_beta(a, b));
}

double h2(double p, double q) {
  double h = 0.0;
  if (p > 0.0) {
    h -= p * std::log(p);
  }
  if (q > 0.0) {
    h -= q * std::log(q);
  }
  return h;
}

}  // namespace

TEST_CASE("PYParams domain") {
  CHECK_NOTHROW(PYParams(0.0, 0.0));
  CHECK_NOTHROW(PYParams(0.5, -0.5));
  CHECK_NOTHROW(PYParams(0.99, 100.0));
  CHECK_THROWS_AS(PYParams(1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(PYParams(-0.1, 1.0), std::domain_error);
  CHECK_THROWS_AS(PYParams(0.2, -0.3), std::domain_error);
}

TEST_CASE("prior mean closed form") {
  CHECK(py_prior_mean(PYParams(0.0, 0.0)) == doctest::Approx(0.0));
  CHECK(py_prior_mean(PYParams(0.0, 1.0)) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(py_prior_mean(PYParams(0.3, 5.0)) ==
        doctest::Approx(digamma(6.0) - digamma(0.7)).epsilon(1e-13));
}

TEST_CASE("prior variance closed form") {
  CHECK(py_prior_variance(PYParams(0.0, 0.0)) == doctest::Approx(0.0));
  // 1/4 + (1/2) psi1(2) - psi1(3) = 1 - pi^2 / 12
  CHECK(py_prior_variance(PYParams(0.0, 1.0)) ==
        doctest::Approx(1.0 - std::numbers::pi * std::numbers::pi / 12.0)
            .epsilon(1e-12));
  CHECK(py_prior_variance(PYParams(0.3, 5.0)) > 0.0);
}

TEST_CASE("posterior mean reduces and concentrates") {
  for (const PYParams p : {PYParams(0.0, 1.0), PYParams(0.3, 2.0)}) {
    CHECK(py_posterior_mean(CountData{}, p) ==
          doctest::Approx(py_prior_mean(p)).epsilon(1e-13));
  }
  // nearly deterministic data pins H near zero
  CHECK(py_posterior_mean(counts({{"a", 1000}}), PYParams(0.0, 0.1)) < 0.02);
}

TEST_CASE("posterior mean is increasing in alpha") {
  const CountData c = counts({{"a", 5}, {"b", 3}, {"c", 1}, {"d", 1}});
  double prev = -1.0;
  for (double alpha : {0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 20.0, 100.0}) {
    const double cur = py_posterior_mean(c, PYParams(0.15, alpha));
    CHECK(cur > prev);
    prev = cur;
  }
}

TEST_CASE("posterior moments depend only on the count multiset") {
  const PYParams p(0.25, 3.0);
  const CountData c1 = counts({{"x", 4}, {"y", 2}, {"z", 2}});
  const CountData c2 = counts({{"u", 2}, {"v", 4}, {"w", 2}});
  CHECK(py_posterior_mean(c1, p) == py_posterior_mean(c2, p));
  CHECK(py_posterior_variance(c1, p) == py_posterior_variance(c2, p));
  CHECK(py_log_evidence(c1, p) == py_log_evidence(c2, p));
}

TEST_CASE("posterior variance reduces to the prior with no data") {
  const PYParams p(0.0, 1.0);
  CHECK(py_posterior_variance(CountData{}, p) ==
        doctest::Approx(py_prior_variance(p)).epsilon(1e-13));
}

TEST_CASE("beta entropy moment identities against tanh-sinh quadrature") {
  // E[h(p)] under Uniform(0,1) is 1/2.
  CHECK(beta_entropy_moments(1.0, 1.0).mean_h ==
        doctest::Approx(0.5).epsilon(1e-12));

  const std::vector<std::pair<double, double>> shapes{
      {1.0, 1.0}, {2.8, 5.2}, {0.5, 3.0}, {4.0, 0.7}, {0.3, 0.9}};
  for (const auto& [a, b] : shapes) {
    const BetaEntropyMoments mom = beta_entropy_moments(a, b);
    auto expect = [&](const std::function<double(double, double)>& f) {
      return oracles::tanh_sinh_01([&](double x, double omx) {
        return f(x, omx) * beta_density(x, omx, a, b);
      });
    };
    CHECK(mom.mean_p ==
          doctest::Approx(expect([](double x, double) { return x; }))
              .epsilon(1e-8));
    CHECK(mom.mean_p_sq ==
          doctest::Approx(expect([](double x, double) { return x * x; }))
              .epsilon(1e-8));
    CHECK(mom.mean_one_minus_p_sq ==
          doctest::Approx(
              expect([](double, double omx) { return omx * omx; }))
              .epsilon(1e-8));
    CHECK(mom.mean_h ==
          doctest::Approx(expect(h2)).epsilon(1e-8).scale(1.0));
    CHECK(mom.mean_h_sq ==
          doctest::Approx(
              expect([](double x, double omx) { return h2(x, omx) * h2(x, omx); }))
              .epsilon(1e-8)
              .scale(1.0));
    CHECK(mom.mean_p_h ==
          doctest::Approx(expect([](double x, double omx) { return x * h2(x, omx); }))
              .epsilon(1e-8)
              .scale(1.0));
  }
}

TEST_CASE("evidence telescopes to one for a single draw") {
  for (const PYParams p :
       {PYParams(0.0, 1.0), PYParams(0.5, 0.5), PYParams(0.9, 0.1)}) {
    CHECK(py_log_evidence(counts({{"a", 1}}), p) ==
          doctest::Approx(0.0).epsilon(1e-13));
  }
}

TEST_CASE("evidence matches the Chinese restaurant two-customer case") {
  CHECK(py_log_evidence(counts({{"a", 1}, {"b", 1}}), PYParams(0.0, 1.0)) ==
        doctest::Approx(std::log(0.5)).epsilon(1e-12));
}

TEST_CASE("evidence corner cases") {
  CHECK(py_log_evidence(counts({{"a", 1}, {"b", 1}}), PYParams(0.0, 0.0)) ==
        -std::numeric_limits<double>::infinity());
  CHECK(py_log_evidence(counts({{"a", 5}}), PYParams(0.0, 0.0)) ==
        doctest::Approx(0.0).epsilon(1e-13));
  CHECK_THROWS_AS(py_log_evidence(CountData{}, PYParams(0.0, 1.0)),
                  EmptyDataError);
}

TEST_CASE("evidence sums to one over set partitions") {
  // Spot case from the module contract: N = 3, (d, alpha) = (0.3, 2).
  const std::vector<PYParams> settings{PYParams(0.3, 2.0), PYParams(0.0, 1.0),
                                       PYParams(0.5, 0.5)};
  for (const PYParams& p : settings) {
    for (int n = 1; n <= 5; ++n) {
      long double total = 0.0L;
      oracles::for_each_set_partition(n, [&](const std::vector<int>& sizes) {
        std::map<std::uint64_t, std::uint64_t> mult;
        for (int s : sizes) {
          ++mult[static_cast<std::uint64_t>(s)];
        }
        std::vector<std::pair<std::uint64_t, std::uint64_t>> entries(
            mult.begin(), mult.end());
        total += std::exp(static_cast<long double>(
            py_log_evidence(Multiplicities::from_entries(entries), p)));
      });
      CHECK(static_cast<double>(total) ==
            doctest::Approx(1.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("multiplicities evidence differs by a parameter-free constant") {
  const Multiplicities m =
      counts({{"a", 2}, {"b", 1}, {"c", 1}}).to_multiplicities();
  const PYParams p1(0.1, 1.0);
  const PYParams p2(0.4, 0.3);

  // differences cancel the combinatorial factor
  CHECK(py_log_evidence_multiplicities(m, p1) -
            py_log_evidence_multiplicities(m, p2) ==
        doctest::Approx(py_log_evidence(m, p1) - py_log_evidence(m, p2))
            .epsilon(1e-12));

  // the constant itself: sum over frequencies of
  // -m_k ln(k!) + ln(M!) - ln(m_k!)
  double constant = 0.0;
  for (const auto& [freq, count] : m.entries()) {
    constant += -static_cast<double>(count) *
                    log_gamma(static_cast<double>(freq) + 1.0) +
                log_gamma(static_cast<double>(m.max_frequency()) + 1.0) -
                log_gamma(static_cast<double>(count) + 1.0);
  }
  CHECK(py_log_evidence_multiplicities(m, p1) ==
        doctest::Approx(py_log_evidence(m, p1) + constant).epsilon(1e-12));

  // single observation: both forms are exactly zero
  const Multiplicities one = counts({{"a", 1}}).to_multiplicities();
  CHECK(py_log_evidence_multiplicities(one, p1) ==
        doctest::Approx(0.0).epsilon(1e-13));
}

TEST_CASE("posterior mean assembles from the decomposition parts") {
  // mean = E[1-p*] A + E[p*] B + E[h(p*)] must equal the direct closed form
  std::mt19937 gen(23);
  std::uniform_int_distribution<int> cnt(1, 10);
  std::uniform_real_distribution<double> dd(0.0, 0.8), aa(0.0, 5.0);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<std::pair<std::string, std::uint64_t>> pairs;
    for (int i = 0; i < 1 + trial % 5; ++i) {
      pairs.emplace_back("s" + std::to_string(i),
                         static_cast<std::uint64_t>(cnt(gen)));
    }
    const CountData c = counts(pairs);
    const Multiplicities m = c.to_multiplicities();
    const PYParams p(dd(gen), aa(gen));

    const double n = static_cast<double>(m.total());
    const double k = static_cast<double>(m.distinct());
    const double a = p.concentration + k * p.discount;
    const double b = n - k * p.discount;
    std::vector<PseudocountGroup> head;
    for (const auto& [freq, count] : m.entries()) {
      head.push_back({static_cast<double>(freq) - p.discount,
                      static_cast<double>(count)});
    }
    const double mean_head = dirichlet_entropy_moments(head).mean;
    const double mean_tail = py_prior_mean(PYParams(p.discount, a));
    const BetaEntropyMoments bm = beta_entropy_moments(a, b);
    const double assembled = (1.0 - bm.mean_p) * mean_head +
                             bm.mean_p * mean_tail + bm.mean_h;
    CHECK(py_posterior_mean(m, p) ==
          doctest::Approx(assembled).epsilon(1e-10));
    CHECK(py_posterior_variance(m, p) >= 0.0);
  }
}
