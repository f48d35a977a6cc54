#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "psi/rng.hpp"
#include "psi/stats.hpp"

using namespace psi;

namespace {

Confusion2x2 table(long tp, long fp, long fn, long tn) { return {tp, fp, fn, tn}; }

// Independent ICC(2,1) oracle: explicit two-way ANOVA mean squares.
double icc_oracle(const RaterMatrix& m) {
  const double n = static_cast<double>(m.size());
  const double k = static_cast<double>(m[0].size());
  double grand = 0.0;
  for (const auto& row : m) {
    for (double x : row) grand += x;
  }
  grand /= n * k;
  double ssRows = 0.0, ssCols = 0.0, ssTotal = 0.0;
  for (const auto& row : m) {
    double mean = 0.0;
    for (double x : row) mean += x / k;
    ssRows += k * (mean - grand) * (mean - grand);
    for (double x : row) ssTotal += (x - grand) * (x - grand);
  }
  for (std::size_t j = 0; j < m[0].size(); ++j) {
    double mean = 0.0;
    for (const auto& row : m) mean += row[j] / n;
    ssCols += n * (mean - grand) * (mean - grand);
  }
  const double msr = ssRows / (n - 1);
  const double msc = ssCols / (k - 1);
  const double mse = (ssTotal - ssRows - ssCols) / ((n - 1) * (k - 1));
  return (msr - mse) / (msr + (k - 1) * mse + k * (msc - mse) / n);
}

}  // namespace

TEST_CASE("Cohen's kappa") {
  CHECK(*cohen_kappa(table(50, 0, 0, 50)) == doctest::Approx(1.0));
  // po = 0.85, pe = 0.45 * 0.50 + 0.55 * 0.50 = 0.5.
  CHECK(*cohen_kappa(table(40, 5, 10, 45)) == doctest::Approx(0.70).epsilon(1e-12));
  // Marginals 0.5/0.5 on both sides with po = 0.5.
  CHECK(*cohen_kappa(table(25, 25, 25, 25)) == doctest::Approx(0.0).scale(1.0));
  CHECK_FALSE(cohen_kappa(table(10, 0, 0, 0)).has_value());
  CHECK_THROWS_AS(cohen_kappa(table(0, 0, 0, 0)), std::domain_error);
  CHECK_THROWS_AS(cohen_kappa(table(-1, 2, 0, 0)), std::domain_error);
}

TEST_CASE("kappa is invariant to swapping the positive class") {
  SplitMix64 rng(3);
  for (int i = 0; i < 500; ++i) {
    const Confusion2x2 c = table(rng.uniform_int(0, 40), rng.uniform_int(0, 40), rng.uniform_int(0, 40),
                                 rng.uniform_int(1, 40));
    const Confusion2x2 swapped = table(c.trueNeg, c.falseNeg, c.falsePos, c.truePos);
    const auto a = cohen_kappa(c);
    const auto b = cohen_kappa(swapped);
    REQUIRE(a.has_value() == b.has_value());
    if (a) {
      CHECK(*a == doctest::Approx(*b));
      CHECK(*a >= -1.0);
      CHECK(*a <= 1.0);
    }
  }
}

TEST_CASE("precision and recall") {
  const PrecisionRecall a = precision_recall(table(9, 1, 0, 10));
  CHECK(*a.precision == doctest::Approx(0.9));
  CHECK(*a.recall == doctest::Approx(1.0));
  const PrecisionRecall b = precision_recall(table(0, 0, 5, 10));
  CHECK_FALSE(b.precision.has_value());
  CHECK(*b.recall == 0.0);
  const PrecisionRecall c = precision_recall(table(0, 0, 0, 10));
  CHECK_FALSE(c.precision.has_value());
  CHECK_FALSE(c.recall.has_value());
}

TEST_CASE("ICC(2,1) absolute agreement") {
  CHECK(*icc_absolute_agreement({{1, 1}, {2, 2}, {3, 3}, {4, 4}}) == doctest::Approx(1.0));

  const RaterMatrix m{{1, 1}, {2, 2}, {3, 3}, {4, 5}};
  // MSR = 13.375 / 3, MSC = 0.125, MSE = 0.125 -> 52 / 55.
  CHECK(icc_oracle(m) == doctest::Approx(52.0 / 55.0).epsilon(1e-12));
  CHECK(*icc_absolute_agreement(m) == doctest::Approx(52.0 / 55.0).epsilon(1e-12));

  CHECK_FALSE(icc_absolute_agreement({{3, 3}, {3, 3}, {3, 3}}).has_value());
  CHECK_THROWS_AS(icc_absolute_agreement({{1, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(icc_absolute_agreement({{1}, {2}}), std::invalid_argument);
  CHECK_THROWS_AS(icc_absolute_agreement({{1, 2}, {3}}), std::invalid_argument);

  SplitMix64 rng(17);
  for (int i = 0; i < 200; ++i) {
    const int n = static_cast<int>(rng.uniform_int(2, 12));
    const int k = static_cast<int>(rng.uniform_int(2, 5));
    RaterMatrix r(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(k)));
    for (auto& row : r) {
      const double subject = rng.uniform(0, 10);
      for (double& x : row) x = subject + rng.normal();
    }
    const auto icc = icc_absolute_agreement(r);
    REQUIRE(icc.has_value());
    CHECK(*icc == doctest::Approx(icc_oracle(r)).epsilon(1e-9));
    CHECK(*icc <= 1.0);
  }
}

TEST_CASE("normal quantile") {
  CHECK(normal_quantile(0.5) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  CHECK(normal_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-10));
  CHECK(normal_quantile(0.8) == doctest::Approx(0.8416212335729143).epsilon(1e-10));
  CHECK(normal_quantile(0.01) == doctest::Approx(-2.3263478740408408).epsilon(1e-10));
  CHECK(normal_quantile(1e-10) == doctest::Approx(-6.361340902404056).epsilon(1e-9));
  CHECK_THROWS_AS(normal_quantile(0.0), std::domain_error);
  CHECK_THROWS_AS(normal_quantile(1.0), std::domain_error);
}

TEST_CASE("correlation power analysis") {
  CHECK(power_sample_size(0.30, 0.05, 0.80) == 85);
  const int n25 = power_sample_size(0.25, 0.05, 0.80);
  CHECK(n25 == 124);
  CHECK(n25 >= 118);
  CHECK(n25 <= 125);
  CHECK(power_sample_size(0.50, 0.05, 0.80) == 30);
  CHECK_THROWS_AS(power_sample_size(1.0, 0.05, 0.8), std::domain_error);
  CHECK_THROWS_AS(power_sample_size(0.3, 0.0, 0.8), std::domain_error);
  CHECK_THROWS_AS(power_sample_size(0.3, 0.05, 1.0), std::domain_error);

  for (int i = 5; i < 95; i += 5) {
    const double r = i / 100.0;
    CHECK(power_sample_size(r + 0.05, 0.05, 0.8) < power_sample_size(r, 0.05, 0.8));
  }
  for (int i = 50; i < 95; i += 5) {
    const double pw = i / 100.0;
    CHECK(power_sample_size(0.3, 0.05, pw + 0.05) > power_sample_size(0.3, 0.05, pw));
  }
}

TEST_CASE("median and interquartile range") {
  const MedianIqr one = median_iqr({1});
  CHECK(one.median == 1.0);
  CHECK(one.q1 == 1.0);
  CHECK(one.q3 == 1.0);
  const MedianIqr four = median_iqr({1, 2, 3, 4});
  CHECK(four.median == doctest::Approx(2.5));
  CHECK(four.q1 == doctest::Approx(1.75));
  CHECK(four.q3 == doctest::Approx(3.25));
  const MedianIqr flat = median_iqr({5, 5, 5, 5});
  CHECK(flat.median == 5.0);
  CHECK(flat.q1 == 5.0);
  CHECK(flat.q3 == 5.0);
  CHECK_THROWS_AS(median_iqr({}), std::domain_error);
  CHECK(median({3, 1, 2}) == 2.0);
  CHECK(quantile_sorted({0, 10}, 0.3) == doctest::Approx(3.0));

  SplitMix64 rng(9);
  std::vector<double> v(31);
  for (double& x : v) x = rng.uniform(-5, 5);
  const MedianIqr base = median_iqr(v);
  for (int i = 0; i < 50; ++i) {
    std::reverse(v.begin() + i % 7, v.end());
    std::swap(v[0], v[static_cast<std::size_t>(rng.uniform_int(0, 30))]);
    const MedianIqr again = median_iqr(v);
    CHECK(again.median == base.median);
    CHECK(again.q1 == base.q1);
    CHECK(again.q3 == base.q3);
  }
}
