#pragma once

#include "adist/arith_fn.hpp"
#include "adist/kahan.hpp"
#include "adist/parallel.hpp"
#include "adist/series.hpp"
#include "adist/sieve.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace adist {

inline constexpr std::uint64_t default_prime_cutoff = 100000;
inline constexpr unsigned default_alpha_cutoff = 40;

namespace detail {

inline void check_cutoffs(std::uint64_t prime_cutoff, unsigned alpha_cutoff) {
  if (prime_cutoff < 2) {
    throw std::invalid_argument("prime cutoff must be at least 2, got " + std::to_string(prime_cutoff));
  }
  if (alpha_cutoff < 1) {
    throw std::invalid_argument("alpha cutoff must be at least 1");
  }
}

}  // namespace detail

/// Local Euler factor (1 - 1/p) sum_{a=0..A} g(p^a) / p^a of a multiplicative g.
///
/// Evaluated as 1 + d with the deviation
///   d = sum_{a=1..A} (g(p^a) - 1)(1 - 1/p)/p^a - p^-(A+1),
/// which keeps factors near 1 accurate to a few ulps of d rather than of 1.
/// Strong g uses the geometric closed form d = (g(p) - 1)(1 - p^-A)/p - p^-(A+1).
[[nodiscard]] inline complex euler_factor(const function_spec &g, std::uint64_t p, unsigned alpha_cutoff) {
  require_multiplicative(g);
  const double pd = double(p);
  const double inv = 1.0 / pd;
  const double log_p = std::log(pd);
  const double residual = std::exp(-(double(alpha_cutoff) + 1.0) * log_p);  // p^-(A+1)
  complex d{0.0, 0.0};
  if (g.strong()) {
    const double kept_mass = -std::expm1(-double(alpha_cutoff) * log_p);  // 1 - p^-A
    d = (g.multiplicative_value(p, 1) - 1.0) * kept_mass / pd;
  } else {
    const double keep = 1.0 - inv;
    double w = 1.0;
    for (unsigned a = 1; a <= alpha_cutoff; ++a) {
      w *= inv;
      d += (g.multiplicative_value(p, a) - 1.0) * (keep * w);
    }
  }
  return 1.0 + (d - residual);
}

/// Same factor, always by the explicit inner sum (no closed form).
[[nodiscard]] inline complex euler_factor_by_sum(const function_spec &g, std::uint64_t p, unsigned alpha_cutoff) {
  require_multiplicative(g);
  const double inv = 1.0 / double(p);
  complex s{1.0, 0.0};
  double w = 1.0;
  for (unsigned a = 1; a <= alpha_cutoff; ++a) {
    w *= inv;
    s += g.multiplicative_value(p, a) * w;
  }
  return (1.0 - inv) * s;
}

/// Truncated Euler product prod_{p <= P} (1 - 1/p) sum_{a <= A} g(p^a)/p^a,
/// the limiting mean value of a multiplicative g. Primes ascending.
[[nodiscard]] inline complex wintner_mean(const function_spec &g, std::span<const std::uint64_t> primes,
                                          unsigned alpha_cutoff) {
  require_multiplicative(g);
  complex prod{1.0, 0.0};
  for (const auto p : primes) {
    prod *= euler_factor(g, p, alpha_cutoff);
  }
  return prod;
}

[[nodiscard]] inline complex wintner_mean(const function_spec &g, std::uint64_t prime_cutoff = default_prime_cutoff,
                                          unsigned alpha_cutoff = default_alpha_cutoff) {
  require_multiplicative(g);
  detail::check_cutoffs(prime_cutoff, alpha_cutoff);
  const auto primes = primes_up_to(prime_cutoff);
  return wintner_mean(g, primes, alpha_cutoff);
}

/// Characteristic function of the limit law of an additive f, as the
/// truncated Euler product of exp(i t f). Computed as wintner_mean of the
/// twisted function, so both agree bit for bit.
[[nodiscard]] inline std::vector<complex> limit_char_fn(const function_spec &f, std::span<const double> t_grid,
                                                        std::uint64_t prime_cutoff = default_prime_cutoff,
                                                        unsigned alpha_cutoff = default_alpha_cutoff,
                                                        std::size_t threads = 0) {
  require_additive(f);
  detail::check_cutoffs(prime_cutoff, alpha_cutoff);
  const auto primes = primes_up_to(prime_cutoff);
  std::vector<complex> out(t_grid.size());
  parallel_for(t_grid.size(), threads,
               [&](std::size_t j) { out[j] = wintner_mean(exp_twist(f, t_grid[j]), primes, alpha_cutoff); });
  return out;
}

/// sum_{p <= P} p^-(A+1): how far the truncated product at t = 0 may sit
/// below 1.
[[nodiscard]] inline double normalization_defect_bound(std::uint64_t prime_cutoff, unsigned alpha_cutoff) {
  detail::check_cutoffs(prime_cutoff, alpha_cutoff);
  kahan_sum<double> acc;
  for (const auto p : primes_up_to(prime_cutoff)) {
    acc.add(std::pow(double(p), -(double(alpha_cutoff) + 1.0)));
  }
  return acc.value();
}

/// Mean and variance of the limit law: the sum over p <= P of independent
/// components X_p taking f(p^a) with probability (1 - 1/p)/p^a, a <= A.
struct limit_moments {
  double mean = 0.0;
  double variance = 0.0;
  /// Truncated variance was negative from rounding and clamped to 0.
  bool variance_clamped = false;
};

/// E = sum_p sum_{a=1..A} f(p^a)(1 - 1/p)/p^a, primes then exponents
/// ascending; D = sum_p (E[X_p^2] - E[X_p]^2).
[[nodiscard]] inline limit_moments compute_limit_moments(const function_spec &f,
                                                         std::uint64_t prime_cutoff = default_prime_cutoff,
                                                         unsigned alpha_cutoff = default_alpha_cutoff) {
  require_additive(f);
  detail::check_cutoffs(prime_cutoff, alpha_cutoff);
  kahan_sum<double> mean;
  kahan_sum<double> var;
  for (const auto p : primes_up_to(prime_cutoff)) {
    const double inv = 1.0 / double(p);
    const double keep = 1.0 - inv;
    double w = 1.0;
    kahan_sum<double> m1;
    kahan_sum<double> m2;
    for (unsigned a = 1; a <= alpha_cutoff; ++a) {
      w *= inv;
      const double v = f.additive_value(p, a);
      const double prob = keep * w;
      mean.add(v * prob);
      m1.add(v * prob);
      m2.add(v * v * prob);
    }
    var.add(m2.value() - m1.value() * m1.value());
  }
  limit_moments out{mean.value(), var.value(), false};
  if (out.variance < 0.0) {
    out.variance = 0.0;
    out.variance_clamped = true;
  }
  return out;
}

[[nodiscard]] inline double limit_mean(const function_spec &f, std::uint64_t prime_cutoff = default_prime_cutoff,
                                       unsigned alpha_cutoff = default_alpha_cutoff) {
  return compute_limit_moments(f, prime_cutoff, alpha_cutoff).mean;
}

[[nodiscard]] inline double limit_variance(const function_spec &f,
                                           std::uint64_t prime_cutoff = default_prime_cutoff,
                                           unsigned alpha_cutoff = default_alpha_cutoff) {
  return compute_limit_moments(f, prime_cutoff, alpha_cutoff).variance;
}

/// Crude estimate of sum_{p > P} |f(p)|/p, by comparison with the integral
/// of |f(x)| / (x ln x) over (P, 1e18] (prime density 1/ln x). The rule is
/// sampled at integer x on a logarithmic grid. An estimate, not a bound.
[[nodiscard]] inline double tail_estimate(const function_spec &f, std::uint64_t prime_cutoff, int power = 1) {
  require_additive(f);
  constexpr double upper = 1e18;
  constexpr int steps = 4096;
  const double lo = std::log(double(prime_cutoff));
  const double hi = std::log(upper);
  if (!(hi > lo)) {
    return 0.0;
  }
  // substitute u = ln x: integrand |f(e^u)|^power / u, trapezoid in u
  const double h = (hi - lo) / steps;
  auto g = [&](double u) {
    const auto x = static_cast<std::uint64_t>(std::llround(std::exp(u)));
    return std::pow(std::abs(f.additive_value(std::max<std::uint64_t>(x, 2), 1)), power) / u;
  };
  kahan_sum<double> acc;
  acc.add(0.5 * (g(lo) + g(hi)));
  for (int k = 1; k < steps; ++k) {
    acc.add(g(lo + h * k));
  }
  return acc.value() * h;
}

/// The three Erdos-Wintner series for truncation radius R:
/// sum_{|f(p)|<=R} f(p)/p, sum_{|f(p)|<=R} f(p)^2/p, sum_{|f(p)|>R} 1/p.
struct erdos_wintner_report {
  double radius = 1.0;
  std::array<series_report, 3> series;
  /// converges only if all three do
  verdict overall = verdict::inconclusive;
};

[[nodiscard]] inline erdos_wintner_report check_erdos_wintner(const function_spec &f, double radius = 1.0,
                                                              std::uint64_t prime_cutoff = default_check_prime_cutoff,
                                                              double tol = default_series_tolerance) {
  require_additive(f);
  if (!(radius > 0)) {
    throw std::invalid_argument("Erdos-Wintner radius must be positive");
  }
  if (prime_cutoff < 2) {
    throw std::invalid_argument("prime cutoff must be at least 2");
  }
  const auto primes = primes_up_to(prime_cutoff);
  erdos_wintner_report r;
  r.radius = radius;
  r.series[0] = prime_series(
      "sum_{|f(p)|<=R} f(p)/p", primes, prime_cutoff,
      [&](std::uint64_t p) {
        const double v = f.additive_value(p, 1);
        return std::abs(v) <= radius ? v / double(p) : 0.0;
      },
      tol);
  r.series[1] = prime_series(
      "sum_{|f(p)|<=R} f(p)^2/p", primes, prime_cutoff,
      [&](std::uint64_t p) {
        const double v = f.additive_value(p, 1);
        return std::abs(v) <= radius ? v * v / double(p) : 0.0;
      },
      tol);
  r.series[2] = prime_series(
      "sum_{|f(p)|>R} 1/p", primes, prime_cutoff,
      [&](std::uint64_t p) { return std::abs(f.additive_value(p, 1)) > radius ? 1.0 / double(p) : 0.0; }, tol);
  r.overall = combine_all(r.series);
  return r;
}

/// sum_p |f(p)|/p together with whether |f(p)| <= 1 for every p <= P. When
/// both hold the limit law exists.
struct simple_condition_report {
  series_report series;
  bool all_bounded = false;
  double max_abs_value = 0.0;
};

[[nodiscard]] inline simple_condition_report check_simple_condition(
    const function_spec &f, std::uint64_t prime_cutoff = default_check_prime_cutoff,
    double tol = default_series_tolerance) {
  require_additive(f);
  if (prime_cutoff < 2) {
    throw std::invalid_argument("prime cutoff must be at least 2");
  }
  const auto primes = primes_up_to(prime_cutoff);
  simple_condition_report r;
  for (const auto p : primes) {
    r.max_abs_value = std::max(r.max_abs_value, std::abs(f.additive_value(p, 1)));
  }
  r.all_bounded = r.max_abs_value <= 1.0;
  r.series = prime_series(
      "sum_p |f(p)|/p", primes, prime_cutoff,
      [&](std::uint64_t p) { return std::abs(f.additive_value(p, 1)) / double(p); }, tol);
  return r;
}

/// Independent per-prime components of the truncated limit law.
struct prime_component {
  std::uint64_t prime;
  /// probabilities[a], a = 0..A: (1 - 1/p)/p^a for a < A; the residual mass
  /// p^-A of all exponents >= A sits at a = A.
  std::vector<double> probabilities;
  /// values[a] = f(p^a); values[0] = 0.
  std::vector<double> values;

  [[nodiscard]] double mean() const {
    kahan_sum<double> acc;
    for (std::size_t a = 0; a < values.size(); ++a) {
      acc.add(values[a] * probabilities[a]);
    }
    return acc.value();
  }
};

struct limit_model {
  std::string function_name;
  std::uint64_t prime_cutoff = 0;
  unsigned alpha_cutoff = 0;
  std::vector<prime_component> components;
};

[[nodiscard]] inline limit_model build_limit_model(const function_spec &f,
                                                   std::uint64_t prime_cutoff = default_prime_cutoff,
                                                   unsigned alpha_cutoff = default_alpha_cutoff) {
  require_additive(f);
  detail::check_cutoffs(prime_cutoff, alpha_cutoff);
  limit_model model{f.name(), prime_cutoff, alpha_cutoff, {}};
  const auto primes = primes_up_to(prime_cutoff);
  model.components.reserve(primes.size());
  for (const auto p : primes) {
    prime_component c{p, std::vector<double>(alpha_cutoff + 1), std::vector<double>(alpha_cutoff + 1)};
    const double inv = 1.0 / double(p);
    const double keep = 1.0 - inv;
    double w = 1.0;
    for (unsigned a = 0; a < alpha_cutoff; ++a) {
      c.probabilities[a] = keep * w;
      c.values[a] = f.additive_value(p, a);
      w *= inv;
    }
    c.probabilities[alpha_cutoff] = w;
    c.values[alpha_cutoff] = f.additive_value(p, alpha_cutoff);
    model.components.push_back(std::move(c));
  }
  return model;
}

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Uniform on the open interval (0, 1) from the top 53 bits.
inline double open_unit(std::mt19937_64 &rng) {
  return (double(rng() >> 11) + 0.5) * 0x1.0p-53;
}

// Primes grouped by [2^k, 2^(k+1)); within a group 1/p varies by at most a
// factor of two, which keeps thinning acceptance above one half.
struct prime_block {
  std::size_t begin;
  std::size_t end;
  double rate;           // 1 / smallest prime in the block
  double log_miss_rate;  // ln(1 - rate)
};

inline std::vector<prime_block> dyadic_blocks(const limit_model &model) {
  std::vector<prime_block> blocks;
  const auto &c = model.components;
  std::size_t i = 0;
  while (i < c.size()) {
    std::uint64_t hi = 2;
    while (hi <= c[i].prime) {
      hi *= 2;
    }
    std::size_t j = i;
    while (j < c.size() && c[j].prime < hi) {
      ++j;
    }
    const double rate = 1.0 / double(c[i].prime);
    blocks.push_back({i, j, rate, std::log1p(-rate)});
    i = j;
  }
  return blocks;
}

}  // namespace detail

/// Samples per RNG shard. Shard s draws samples [s * shard_size, (s+1) *
/// shard_size) from its own generator, so output is independent of threads.
inline constexpr std::size_t sample_shard_size = std::size_t{1} << 16;

/// Draws `count` samples of sum_{p <= P} f(p^{a_p}) with independent
/// exponents P(a_p >= k) = p^-k, clamped at A.
///
/// Per prime, the event a_p >= 1 (probability 1/p) is drawn by thinning a
/// geometric skip over each dyadic block; given a_p >= 1 the exponent is
/// 1 + floor(ln U / ln(1/p)) by inverse transform. Generator: mt19937_64 per
/// shard, seeded with splitmix64(seed + golden * (shard + 1)).
[[nodiscard]] inline std::vector<double> sample_limit(const limit_model &model, std::size_t count,
                                                      std::uint64_t seed, std::size_t threads = 0) {
  if (count == 0) {
    throw std::invalid_argument("sample count must be at least 1");
  }
  std::vector<double> out;
  try {
    out.assign(count, 0.0);
  } catch (const std::bad_alloc &) {
    throw resource_error("cannot allocate " + std::to_string(count) + " samples");
  }
  const auto blocks = detail::dyadic_blocks(model);
  const auto &comps = model.components;
  const unsigned cap = model.alpha_cutoff;
  const std::size_t shards = (count + sample_shard_size - 1) / sample_shard_size;

  parallel_for(shards, threads, [&](std::size_t shard) {
    std::mt19937_64 rng(detail::splitmix64(seed + 0x9e3779b97f4a7c15ULL * (shard + 1)));
    const std::size_t lo = shard * sample_shard_size;
    const std::size_t hi = std::min(count, lo + sample_shard_size);
    for (std::size_t s = lo; s < hi; ++s) {
      double value = 0.0;
      for (const auto &b : blocks) {
        std::size_t i = b.begin;
        for (;;) {
          // failures before the next candidate at rate b.rate
          const double skip = std::floor(std::log(detail::open_unit(rng)) / b.log_miss_rate);
          if (skip >= double(b.end - i)) {
            break;
          }
          i += static_cast<std::size_t>(skip);
          const auto &c = comps[i];
          const double accept = (1.0 / double(c.prime)) / b.rate;
          if (accept >= 1.0 || detail::open_unit(rng) < accept) {
            const double extra = std::floor(std::log(detail::open_unit(rng)) / -std::log(double(c.prime)));
            const unsigned a = extra >= double(cap - 1) ? cap : 1U + static_cast<unsigned>(extra);
            value += c.values[a];
          }
          ++i;
        }
      }
      out[s] = value;
    }
  });
  return out;
}

}  // namespace adist
