#include "adist/empirical.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

namespace builtin = adist::builtin;
using adist::complex;
using adist::spf_sieve;

TEST(Summarize, Examples) {
  const spf_sieve s(100);
  double sum = 0;
  for (std::uint64_t m = 1; m <= 10; ++m) sum += oracle::omega(m);
  EXPECT_EQ(sum, 11.0);
  const auto w = adist::summarize(builtin::omega(), 10, s);
  EXPECT_NEAR(w.mean, 1.1, 1e-15);
  EXPECT_NEAR(w.variance, 1.5 - 1.21, 1e-15);
  EXPECT_EQ(w.n, 10u);

  const auto one = adist::summarize(builtin::log_sigma_ratio(), 1, s);
  EXPECT_EQ(one.mean, 0.0);
  EXPECT_EQ(one.variance, 0.0);

  const auto lp = adist::summarize(builtin::log_phi_ratio(), 2, s);
  EXPECT_NEAR(lp.mean, std::log(0.5) / 2, 1e-16);
  EXPECT_THROW((void)adist::summarize(builtin::omega(), 101, s), std::out_of_range);
  EXPECT_THROW((void)adist::summarize(std::vector<double>{}), std::invalid_argument);
}

TEST(Summarize, Invariants) {
  const std::uint64_t n = 200000;
  const spf_sieve s(n);
  for (const auto &f : {builtin::omega(), builtin::big_omega(), builtin::log_phi_ratio(), builtin::log_sigma_ratio(),
                        builtin::zero()}) {
    const auto values = adist::bulk_eval_additive(f, n, s);
    const auto sum = adist::summarize(values);
    ASSERT_EQ(sum.sorted_values.size(), n);
    ASSERT_TRUE(std::is_sorted(sum.sorted_values.begin(), sum.sorted_values.end()));
    ASSERT_GE(sum.variance, 0.0);
    long double avg = 0;
    for (double v : sum.sorted_values) avg += v;
    avg /= n;
    EXPECT_NEAR(sum.mean, double(avg), 1e-9 * std::max(1.0, std::abs(double(avg)))) << f.name();
    long double two_pass = 0;
    for (double v : values) two_pass += (v - double(avg)) * (v - double(avg));
    two_pass /= n;
    EXPECT_NEAR(sum.variance, double(two_pass), 1e-9 * std::max(1.0, double(two_pass))) << f.name();
  }
}

TEST(Summarize, NearConstantVarianceIsNonNegative) {
  for (std::size_t n : {3u, 7u, 1000u, 99999u}) {
    const auto s = adist::summarize(std::vector<double>(n, 0.1));
    EXPECT_GE(s.variance, 0.0);
    if (s.variance_clamped) {
      EXPECT_EQ(s.variance, 0.0);
    }
    EXPECT_LT(s.variance, 1e-15);
  }
}

TEST(Cdf, Examples) {
  const spf_sieve s(100);
  const auto w = adist::summarize(builtin::omega(), 10, s);
  EXPECT_EQ(adist::cdf(w, 1.5), 0.8);
  EXPECT_EQ(adist::cdf(w, 2.0), 1.0);
  EXPECT_EQ(adist::cdf(w, 100.0), 1.0);
  EXPECT_EQ(adist::cdf(w, -0.5), 0.0);
  EXPECT_EQ(adist::cdf(w, 0.0), 0.1);  // right-closed
  EXPECT_EQ(adist::cdf(w, -std::numeric_limits<double>::infinity()), 0.0);
  EXPECT_EQ(adist::cdf(w, std::numeric_limits<double>::infinity()), 1.0);
}

TEST(Cdf, Monotone) {
  const spf_sieve s(50000);
  const auto w = adist::summarize(builtin::log_sigma_ratio(), 50000, s);
  double prev = 0.0;
  for (double y = -0.1; y < 2.0; y += 0.001) {
    const double F = adist::cdf(w, y);
    ASSERT_GE(F, prev);
    ASSERT_LE(F, 1.0);
    prev = F;
  }
}

TEST(CharFn, Examples) {
  const spf_sieve s(1000);
  const std::vector<double> ts{0.0, 0.5, -3.0, 9.9};
  const auto w2 = adist::char_fn(builtin::omega(), 2, ts, s);
  EXPECT_EQ(w2[0], complex(1.0));
  for (std::size_t k = 1; k < ts.size(); ++k) {
    EXPECT_NEAR(std::abs(w2[k] - (1.0 + std::polar(1.0, ts[k])) / 2.0), 0.0, 1e-15);
  }
  // direct per-element oracle using sigma(m)/m
  const auto ls = adist::char_fn(builtin::log_sigma_ratio(), 100, std::vector<double>{1.0}, s);
  complex direct{0.0, 0.0};
  for (std::uint64_t m = 1; m <= 100; ++m) {
    direct += std::polar(1.0, std::log(double(oracle::sigma(m)) / double(m)));
  }
  direct /= 100.0;
  EXPECT_NEAR(std::abs(ls[0] - direct), 0.0, 1e-12);
}

TEST(CharFn, BoundedAndThreadIndependent) {
  const std::uint64_t n = 100000;
  const spf_sieve s(n);
  const auto values = adist::bulk_eval_additive(builtin::log_phi_ratio(), n, s);
  const auto ts = adist::linear_grid(-10, 10, 41);
  const auto one = adist::char_fn(values, ts, 1);
  const auto four = adist::char_fn(values, ts, 4);
  for (std::size_t k = 0; k < ts.size(); ++k) {
    ASSERT_LE(std::abs(one[k]), 1.0 + 1e-12);
    ASSERT_EQ(one[k], four[k]);
  }
  EXPECT_EQ(one[20], complex(1.0));  // t = 0 at the grid midpoint
}

TEST(KsDistance, Examples) {
  const std::vector<double> a{0.0, 1.0, 2.0, 2.0};
  EXPECT_EQ(adist::ks_distance(a, a), 0.0);
  EXPECT_EQ(adist::ks_distance(std::vector<double>{0.0}, std::vector<double>{1.0}), 1.0);
  EXPECT_EQ(adist::ks_distance(std::vector<double>{0.0, 1.0}, std::vector<double>{0.0, 2.0}), 0.5);
  EXPECT_THROW((void)adist::ks_distance(std::vector<double>{}, a), std::invalid_argument);
  EXPECT_THROW((void)adist::ks_distance(std::vector<double>{2.0, 1.0}, a), std::invalid_argument);
}

namespace {

// sup over all sample points of |F_a - F_b|, evaluated by counting.
double ks_by_counting(const std::vector<double> &a, const std::vector<double> &b) {
  double sup = 0;
  auto F = [](const std::vector<double> &v, double y) {
    return double(std::count_if(v.begin(), v.end(), [y](double x) { return x <= y; })) / double(v.size());
  };
  for (const auto *v : {&a, &b}) {
    for (double y : *v) sup = std::max(sup, std::abs(F(a, y) - F(b, y)));
  }
  return sup;
}

std::vector<double> random_sample(std::mt19937_64 &rng) {
  std::uniform_int_distribution<int> len(1, 12);
  std::uniform_int_distribution<int> val(0, 6);  // small range forces ties
  std::vector<double> v(len(rng));
  for (auto &x : v) x = val(rng) * 0.5;
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST(KsDistance, PropertiesOnRandomSmallSamples) {
  std::mt19937_64 rng(12345);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto a = random_sample(rng);
    const auto b = random_sample(rng);
    const auto c = random_sample(rng);
    const double ab = adist::ks_distance(a, b);
    ASSERT_EQ(ab, adist::ks_distance(b, a));
    ASSERT_NEAR(ab, ks_by_counting(a, b), 1e-15);
    ASSERT_GE(ab, 0.0);
    ASSERT_LE(ab, 1.0);
    ASSERT_LE(ab, adist::ks_distance(a, c) + adist::ks_distance(c, b) + 1e-15);
  }
}

TEST(LinearGrid, Shape) {
  const auto g = adist::linear_grid(-10, 10, 201);
  EXPECT_EQ(g.size(), 201u);
  EXPECT_EQ(g.front(), -10.0);
  EXPECT_EQ(g.back(), 10.0);
  EXPECT_EQ(g[100], 0.0);
  EXPECT_EQ(adist::linear_grid(3, 5, 1), std::vector<double>{3.0});
  EXPECT_THROW((void)adist::linear_grid(0, 1, 0), std::invalid_argument);
}
