#pragma once

// Test-only reference implementations. Nothing here uses the sieve, the
// prime-power sweep or the factorized formulas under test.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

namespace oracle {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

inline std::uint64_t smallest_factor(std::uint64_t n) {
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return d;
  }
  return n;
}

inline std::vector<std::pair<std::uint64_t, unsigned>> factor(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    unsigned e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    if (e) out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

inline std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 1; d <= n; ++d) {
    if (n % d == 0) out.push_back(d);
  }
  return out;
}

inline std::uint64_t count_primes(std::uint64_t limit) {
  std::uint64_t c = 0;
  for (std::uint64_t k = 2; k <= limit; ++k) c += is_prime(k);
  return c;
}

inline int mobius(std::uint64_t n) {
  int sign = 1;
  for (auto [p, e] : factor(n)) {
    if (e > 1) return 0;
    sign = -sign;
  }
  return sign;
}

inline double omega(std::uint64_t n) { return double(factor(n).size()); }

inline double big_omega(std::uint64_t n) {
  double s = 0;
  for (auto [p, e] : factor(n)) s += e;
  return s;
}

inline std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t c = 0;
  for (std::uint64_t k = 1; k <= n; ++k) c += std::gcd(k, n) == 1;
  return c;
}

inline std::uint64_t sigma(std::uint64_t n) {
  std::uint64_t s = 0;
  for (auto d : divisors(n)) s += d;
  return s;
}

template <typename H, typename G>
auto convolve(H h, G g, std::uint64_t n) {
  decltype(h(1) * g(1)) s{};
  for (auto d : divisors(n)) s += h(d) * g(n / d);
  return s;
}

}  // namespace oracle
