#pragma once

#include "adist/arith_fn.hpp"
#include "adist/kahan.hpp"
#include "adist/series.hpp"
#include "adist/sieve.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace adist {

namespace detail {

// Value of f at prod p_l^{e_l}, computed from the exponent vector. Additive
// functions sum, multiplicative ones multiply; zero exponents are skipped.
inline complex eval_exponents(const function_spec &f, const std::vector<prime_power> &base,
                              const std::vector<unsigned> &exps) {
  if (f.additive()) {
    double s = 0.0;
    for (std::size_t l = 0; l < base.size(); ++l) {
      if (exps[l] != 0) {
        s += f.additive_value(base[l].prime, exps[l]);
      }
    }
    return {s, 0.0};
  }
  complex prod{1.0, 0.0};
  for (std::size_t l = 0; l < base.size(); ++l) {
    if (exps[l] != 0) {
      prod *= f.multiplicative_value(base[l].prime, exps[l]);
    }
  }
  return prod;
}

}  // namespace detail

/// (h * g)(m) = sum over d | m of h(d) g(m/d).
///
/// Divisors are enumerated as exponent vectors of m's factorization in
/// lexicographic order; the sum is Kahan-compensated. Any kinds are accepted.
[[nodiscard]] inline complex convolve_bruteforce(const function_spec &h, const function_spec &g, std::uint64_t m,
                                                 const spf_sieve &sieve) {
  const auto fm = factorize(m, sieve);
  const auto &base = fm.factors;
  std::vector<unsigned> d_exp(base.size(), 0);
  std::vector<unsigned> q_exp(base.size(), 0);
  kahan_sum<complex> acc;
  for (;;) {
    for (std::size_t l = 0; l < base.size(); ++l) {
      q_exp[l] = base[l].exponent - d_exp[l];
    }
    acc.add(detail::eval_exponents(h, base, d_exp) * detail::eval_exponents(g, base, q_exp));
    // odometer increment
    std::size_t l = 0;
    for (; l < base.size(); ++l) {
      if (d_exp[l] < base[l].exponent) {
        ++d_exp[l];
        break;
      }
      d_exp[l] = 0;
    }
    if (l == base.size()) {
      break;
    }
  }
  return acc.value();
}

/// (h * g)(p^a) = g(p^a) + h(p) g(p^(a-1)) + ... + h(p^a), multiplicative h, g.
[[nodiscard]] inline complex convolve_prime_power(const function_spec &h, const function_spec &g, std::uint64_t p,
                                                  unsigned a) {
  require_multiplicative(h);
  require_multiplicative(g);
  complex s{0.0, 0.0};
  for (unsigned j = 0; j <= a; ++j) {
    s += h.multiplicative_value(p, j) * g.multiplicative_value(p, a - j);
  }
  return s;
}

/// Factorized convolution of multiplicative h, g: product of the prime-power
/// factors above over the factorization of m.
[[nodiscard]] inline complex convolve_factored(const function_spec &h, const function_spec &g,
                                               const factored_integer &m) {
  require_multiplicative(h);
  require_multiplicative(g);
  complex prod{1.0, 0.0};
  for (const auto &[p, a] : m.factors) {
    prod *= convolve_prime_power(h, g, p, a);
  }
  return prod;
}

/// (h * mu)(p^a) = h(p^a) - h(p^(a-1)), a >= 1.
///
/// For strong h and a >= 2 both values come from the same rule(p, 1) call,
/// so the difference is exactly zero.
[[nodiscard]] inline complex mobius_invert_prime_power(const function_spec &h, std::uint64_t p, unsigned a) {
  require_multiplicative(h);
  if (a == 0) {
    throw std::invalid_argument("Moebius inversion at p^0 is the value at 1, not a prime-power factor");
  }
  return h.multiplicative_value(p, a) - h.multiplicative_value(p, a - 1);
}

/// (h * mu)(m) for multiplicative h, via the product of prime-power factors.
[[nodiscard]] inline complex mobius_invert(const function_spec &h, const factored_integer &m) {
  require_multiplicative(h);
  complex prod{1.0, 0.0};
  for (const auto &[p, a] : m.factors) {
    prod *= mobius_invert_prime_power(h, p, a);
  }
  return prod;
}

/// Partial sums of sum over p^a (p <= prime_cutoff, 1 <= a <= alpha_cutoff) of
/// |exp(i t f(p^a)) - exp(i t f(p^(a-1)))| / p^a at doubling prime cutoffs.
/// Finite limit is the absolute-convergence condition for exp(itf) * mu.
[[nodiscard]] inline series_report inversion_tail_sum(const function_spec &f, double t,
                                                      std::uint64_t prime_cutoff = default_check_prime_cutoff,
                                                      unsigned alpha_cutoff = 40,
                                                      double tol = default_series_tolerance) {
  require_additive(f);
  if (prime_cutoff < 2 || alpha_cutoff < 1) {
    throw std::invalid_argument("inversion_tail_sum needs prime cutoff >= 2 and alpha cutoff >= 1");
  }
  const auto twisted = exp_twist(f, t);
  const auto primes = primes_up_to(prime_cutoff);
  auto term = [&](std::uint64_t p) {
    const double inv = 1.0 / double(p);
    double w = 1.0;
    double s = 0.0;
    for (unsigned a = 1; a <= alpha_cutoff; ++a) {
      w *= inv;
      s += std::abs(mobius_invert_prime_power(twisted, p, a)) * w;
    }
    return s;
  };
  return prime_series("sum_{p^a} |e^{itf(p^a)} - e^{itf(p^(a-1))}| / p^a, t = " + std::to_string(t), primes,
                      prime_cutoff, term, tol);
}

}  // namespace adist
