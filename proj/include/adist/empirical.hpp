#pragma once

#include "adist/arith_fn.hpp"
#include "adist/kahan.hpp"
#include "adist/parallel.hpp"
#include "adist/sieve.hpp"

#include <algorithm>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace adist {

/// Statistics of x_n(m) = f(m) on the uniform space {1, ..., n}.
///
/// sorted_values keeps all n values (8 bytes each: ~80 MB at n = 10^7) so CDF
/// queries are binary searches.
struct empirical_summary {
  std::uint64_t n = 0;
  double mean = 0.0;
  double variance = 0.0;
  /// Set when (1/n) sum f^2 - mean^2 came out negative by cancellation and
  /// was clamped to 0.
  bool variance_clamped = false;
  std::vector<double> sorted_values;
};

/// Mean and variance of the given values, taken in index order with Kahan
/// summation; variance is (1/n) sum f^2 - mean^2.
[[nodiscard]] inline empirical_summary summarize(std::vector<double> values) {
  if (values.empty()) {
    throw std::invalid_argument("cannot summarize an empty sample");
  }
  kahan_sum<double> s1;
  kahan_sum<double> s2;
  for (const double v : values) {
    s1.add(v);
    s2.add(v * v);
  }
  empirical_summary out;
  out.n = values.size();
  const double n = double(values.size());
  out.mean = s1.value() / n;
  out.variance = s2.value() / n - out.mean * out.mean;
  if (out.variance < 0.0) {
    out.variance = 0.0;
    out.variance_clamped = true;
  }
  std::sort(values.begin(), values.end());
  out.sorted_values = std::move(values);
  return out;
}

[[nodiscard]] inline empirical_summary summarize(const function_spec &f, std::uint64_t n, const spf_sieve &sieve) {
  return summarize(bulk_eval_additive(f, n, sieve));
}

/// F_n(y) = #{m <= n : f(m) <= y} / n.
[[nodiscard]] inline double cdf(const empirical_summary &s, double y) {
  const auto &v = s.sorted_values;
  const auto count = std::upper_bound(v.begin(), v.end(), y) - v.begin();
  return double(count) / double(v.size());
}

/// (1/n) sum_m exp(i t_j f(m)) for each t_j, summed in index order. Grid
/// points are independent tasks, so the result does not depend on `threads`.
[[nodiscard]] inline std::vector<complex> char_fn(std::span<const double> values, std::span<const double> t_grid,
                                                  std::size_t threads = 0) {
  if (values.empty()) {
    throw std::invalid_argument("characteristic function of an empty sample");
  }
  std::vector<complex> out(t_grid.size());
  const double n = double(values.size());
  parallel_for(t_grid.size(), threads, [&](std::size_t j) {
    const double t = t_grid[j];
    if (t == 0.0) {
      out[j] = {1.0, 0.0};
      return;
    }
    kahan_sum<complex> acc;
    for (const double v : values) {
      acc.add(std::polar(1.0, t * v));
    }
    out[j] = acc.value() / n;
  });
  return out;
}

[[nodiscard]] inline std::vector<complex> char_fn(const function_spec &f, std::uint64_t n,
                                                  std::span<const double> t_grid, const spf_sieve &sieve,
                                                  std::size_t threads = 0) {
  const auto values = bulk_eval_additive(f, n, sieve);
  return char_fn(values, t_grid, threads);
}

/// Two-sample Kolmogorov-Smirnov statistic sup_y |F_a(y) - F_b(y)| of two
/// ascending samples. Ties are consumed together so the step functions are
/// compared only at points where both are right-continuous.
[[nodiscard]] inline double ks_distance(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) {
    throw std::invalid_argument("ks_distance needs two non-empty samples");
  }
  if (!std::is_sorted(a.begin(), a.end()) || !std::is_sorted(b.begin(), b.end())) {
    throw std::invalid_argument("ks_distance needs ascending samples");
  }
  const double na = double(a.size());
  const double nb = double(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double sup = 0.0;
  while (i < a.size() && j < b.size()) {
    const double y = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == y) {
      ++i;
    }
    while (j < b.size() && b[j] == y) {
      ++j;
    }
    sup = std::max(sup, std::abs(double(i) / na - double(j) / nb));
  }
  return sup;
}

/// Evenly spaced grid of `steps` points over [lo, hi]; one point gives {lo}.
[[nodiscard]] inline std::vector<double> linear_grid(double lo, double hi, std::size_t steps) {
  if (steps == 0) {
    throw std::invalid_argument("grid needs at least one point");
  }
  std::vector<double> g(steps);
  if (steps == 1) {
    g[0] = lo;
    return g;
  }
  for (std::size_t k = 0; k < steps; ++k) {
    g[k] = lo + (hi - lo) * double(k) / double(steps - 1);
  }
  return g;
}

}  // namespace adist
