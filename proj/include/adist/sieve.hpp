#pragma once

#include "adist/error.hpp"

#include <cstdint>
#include <limits>
#include <new>
#include <stdexcept>
#include <string>
#include <vector>

namespace adist {

/// One prime power p^exponent of a factorization.
struct prime_power {
  std::uint64_t prime;
  unsigned exponent;

  friend bool operator==(const prime_power &, const prime_power &) = default;
};

/// A positive integer together with its prime factorization, primes strictly
/// increasing. value == 1 iff factors is empty.
struct factored_integer {
  std::uint64_t value = 1;
  std::vector<prime_power> factors;
};

/// Largest supported sieve limit. Entries are 32-bit, and every prime below
/// 2^32 fits, so 2^32 itself (spf = 2) is the last representable index.
inline constexpr std::uint64_t max_sieve_limit = std::uint64_t{1} << 32;

/// Smallest-prime-factor table over [0, limit].
///
/// Memory cost is 4 bytes per entry: limit = 10^7 needs ~40 MB, limit = 10^8
/// ~400 MB. A built sieve is immutable and may be shared between threads.
class spf_sieve {
 public:
  explicit spf_sieve(std::uint64_t limit) : limit_{limit} {
    if (limit < 2) {
      throw std::invalid_argument("sieve limit must be at least 2, got " + std::to_string(limit));
    }
    if (limit > max_sieve_limit) {
      throw std::invalid_argument("sieve limit exceeds 2^32: " + std::to_string(limit));
    }
    try {
      spf_.assign(limit + 1, 0);
    } catch (const std::bad_alloc &) {
      throw resource_error("cannot allocate smallest-prime-factor table for limit " + std::to_string(limit));
    } catch (const std::length_error &) {
      throw resource_error("cannot allocate smallest-prime-factor table for limit " + std::to_string(limit));
    }
    for (std::uint64_t i = 2; i <= limit; ++i) {
      if (spf_[i] != 0) {
        continue;
      }
      spf_[i] = static_cast<std::uint32_t>(i);
      if (i > limit / i) {
        continue;
      }
      for (std::uint64_t j = i * i; j <= limit; j += i) {
        if (spf_[j] == 0) {
          spf_[j] = static_cast<std::uint32_t>(i);
        }
      }
    }
  }

  [[nodiscard]] std::uint64_t limit() const noexcept { return limit_; }

  /// Smallest prime factor of m, 2 <= m <= limit().
  [[nodiscard]] std::uint64_t spf(std::uint64_t m) const {
    if (m < 2 || m > limit_) {
      throw std::out_of_range("spf index " + std::to_string(m) + " outside [2, " + std::to_string(limit_) + "]");
    }
    return spf_[m];
  }

  [[nodiscard]] bool is_prime(std::uint64_t m) const noexcept { return m >= 2 && m <= limit_ && spf_[m] == m; }

  /// Primes in [2, bound], ascending. bound is clamped to limit().
  [[nodiscard]] std::vector<std::uint64_t> primes(std::uint64_t bound) const {
    std::vector<std::uint64_t> out;
    const auto hi = bound < limit_ ? bound : limit_;
    for (std::uint64_t i = 2; i <= hi; ++i) {
      if (spf_[i] == i) {
        out.push_back(i);
      }
    }
    return out;
  }

  [[nodiscard]] std::vector<std::uint64_t> primes() const { return primes(limit_); }

 private:
  std::uint64_t limit_;
  std::vector<std::uint32_t> spf_;
};

/// Factorization of 1 <= m <= sieve.limit() in O(log m) table lookups.
[[nodiscard]] inline factored_integer factorize(std::uint64_t m, const spf_sieve &sieve) {
  if (m == 0 || m > sieve.limit()) {
    throw std::out_of_range("cannot factorize " + std::to_string(m) + " with sieve limit " +
                            std::to_string(sieve.limit()));
  }
  factored_integer out{m, {}};
  while (m > 1) {
    const auto p = sieve.spf(m);
    unsigned e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    out.factors.push_back({p, e});
  }
  return out;
}

/// Primes up to limit (limit >= 2), ascending. Bit-packed Eratosthenes.
[[nodiscard]] inline std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
  if (limit < 2) {
    throw std::invalid_argument("prime bound must be at least 2, got " + std::to_string(limit));
  }
  std::vector<bool> composite(limit + 1, false);
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) {
      continue;
    }
    out.push_back(i);
    if (i > limit / i) {
      continue;
    }
    for (std::uint64_t j = i * i; j <= limit; j += i) {
      composite[j] = true;
    }
  }
  return out;
}

/// Recomposes a factorization; used by tests and sanity checks.
[[nodiscard]] inline std::uint64_t recompose(const factored_integer &m) {
  std::uint64_t v = 1;
  for (const auto &[p, e] : m.factors) {
    for (unsigned k = 0; k < e; ++k) {
      v *= p;
    }
  }
  return v;
}

}  // namespace adist
