#pragma once

#include "adist/kahan.hpp"

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace adist {

enum class verdict { converges, diverges, inconclusive };

[[nodiscard]] constexpr std::string_view to_string(verdict v) noexcept {
  switch (v) {
    case verdict::converges: return "converges";
    case verdict::diverges: return "diverges";
    case verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

inline constexpr double default_series_tolerance = 1e-6;

/// Prime cutoff used by the condition checkers unless told otherwise. Cutoffs
/// of 10^5 leave increments of order 1e-6 for sums like sum |ln(1 - 1/p)|/p,
/// too close to the default tolerance to classify.
inline constexpr std::uint64_t default_check_prime_cutoff = std::uint64_t{1} << 20;

/// Partial sums of a series over primes, taken at doubling cutoffs.
struct series_report {
  std::string description;
  std::vector<std::uint64_t> cutoffs;
  std::vector<double> partial_sums;
  verdict result = verdict::inconclusive;
  double tolerance = default_series_tolerance;
};

/// Heuristic classification from partial sums at cutoffs 2, 4, 8, ...
///
/// With d_k = |S_k - S_{k-1}| and the last three increments d_{K-2..K}:
///   converges    if each is < tol and d_{K-2} >= d_{K-1} >= d_K;
///   diverges     if each is > 10 tol;
///   inconclusive otherwise, or with fewer than four partial sums.
/// This is numerical evidence, not a proof.
[[nodiscard]] inline verdict classify_partial_sums(std::span<const double> sums, double tol) {
  if (sums.size() < 4) {
    return verdict::inconclusive;
  }
  const auto k = sums.size();
  const double d0 = std::abs(sums[k - 3] - sums[k - 4]);
  const double d1 = std::abs(sums[k - 2] - sums[k - 3]);
  const double d2 = std::abs(sums[k - 1] - sums[k - 2]);
  if (d0 < tol && d1 < tol && d2 < tol && d0 >= d1 && d1 >= d2) {
    return verdict::converges;
  }
  if (d0 > 10 * tol && d1 > 10 * tol && d2 > 10 * tol) {
    return verdict::diverges;
  }
  return verdict::inconclusive;
}

/// 2, 4, 8, ..., largest power of two <= prime_cutoff.
[[nodiscard]] inline std::vector<std::uint64_t> doubling_cutoffs(std::uint64_t prime_cutoff) {
  if (prime_cutoff < 2) {
    throw std::invalid_argument("prime cutoff must be at least 2");
  }
  std::vector<std::uint64_t> out;
  for (std::uint64_t c = 2; c <= prime_cutoff; c *= 2) {
    out.push_back(c);
    if (c > prime_cutoff / 2) {
      break;
    }
  }
  return out;
}

/// Builds a series report from per-prime terms: partial sums (Kahan, primes
/// ascending) recorded at each doubling cutoff.
[[nodiscard]] inline series_report prime_series(std::string description, std::span<const std::uint64_t> primes,
                                                std::uint64_t prime_cutoff,
                                                const std::function<double(std::uint64_t)> &term,
                                                double tol = default_series_tolerance) {
  series_report r;
  r.description = std::move(description);
  r.tolerance = tol;
  r.cutoffs = doubling_cutoffs(prime_cutoff);
  r.partial_sums.reserve(r.cutoffs.size());
  kahan_sum<double> acc;
  std::size_t i = 0;
  for (const auto c : r.cutoffs) {
    for (; i < primes.size() && primes[i] <= c; ++i) {
      acc.add(term(primes[i]));
    }
    r.partial_sums.push_back(acc.value());
  }
  r.result = classify_partial_sums(r.partial_sums, tol);
  return r;
}

/// converges only if all converge; diverges if any diverges.
[[nodiscard]] inline verdict combine_all(std::span<const series_report> reports) {
  bool all = true;
  for (const auto &r : reports) {
    if (r.result == verdict::diverges) {
      return verdict::diverges;
    }
    all = all && r.result == verdict::converges;
  }
  return all ? verdict::converges : verdict::inconclusive;
}

}  // namespace adist
