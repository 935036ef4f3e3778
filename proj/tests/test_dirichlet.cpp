#include "adist/dirichlet.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace builtin = adist::builtin;
using adist::complex;
using adist::factorize;
using adist::spf_sieve;

namespace {

std::vector<adist::function_spec> multiplicative_family() {
  return {builtin::mobius(),
          builtin::mobius_squared(),
          builtin::identity(),
          builtin::one(),
          adist::exp_twist(builtin::log_phi_ratio(), 1.3),
          adist::exp_twist(builtin::log_sigma_ratio(), -2.1),
          adist::exp_twist(builtin::big_omega(), 0.4)};
}

bool close_rel(complex a, complex b, double tol) {
  return std::abs(a - b) <= tol * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

}  // namespace

TEST(ConvolveBruteforce, Examples) {
  const spf_sieve s(100);
  EXPECT_EQ(convolve_bruteforce(builtin::mobius(), builtin::one(), 1, s), complex(1.0));
  EXPECT_EQ(convolve_bruteforce(builtin::mobius(), builtin::one(), 6, s), complex(0.0));
  EXPECT_EQ(convolve_bruteforce(builtin::identity(), builtin::mobius(), 7, s), complex(6.0));
  EXPECT_THROW((void)convolve_bruteforce(builtin::one(), builtin::one(), 101, s), std::out_of_range);
}

TEST(ConvolveBruteforce, MatchesTrialDivisionOracle) {
  const spf_sieve s(3000);
  auto mu = [](std::uint64_t n) { return double(oracle::mobius(n)); };
  auto id = [](std::uint64_t n) { return double(n); };
  auto one = [](std::uint64_t) { return 1.0; };
  for (std::uint64_t m = 1; m <= 3000; ++m) {
    ASSERT_EQ(convolve_bruteforce(builtin::identity(), builtin::mobius(), m, s).real(), oracle::convolve(id, mu, m));
    ASSERT_EQ(convolve_bruteforce(builtin::one(), builtin::one(), m, s).real(), oracle::convolve(one, one, m));
    ASSERT_EQ(convolve_bruteforce(builtin::mobius(), builtin::one(), m, s).real(), m == 1 ? 1.0 : 0.0);
  }
}

TEST(ConvolveBruteforce, AcceptsAdditiveFunctions) {
  // (omega * 1)(12) = sum over d | 12 of omega(d)
  const spf_sieve s(12);
  double expected = 0;
  for (auto d : oracle::divisors(12)) expected += oracle::omega(d);
  EXPECT_EQ(convolve_bruteforce(builtin::omega(), builtin::one(), 12, s).real(), expected);
}

TEST(ConvolveFactored, Examples) {
  const spf_sieve s(100);
  for (const auto &h : multiplicative_family()) {
    for (const auto &g : multiplicative_family()) {
      EXPECT_EQ(convolve_factored(h, g, factorize(1, s)), complex(1.0));
      for (std::uint64_t p : {2ull, 3ull, 97ull}) {
        const auto expected = g.multiplicative_value(p, 1) + h.multiplicative_value(p, 1);
        EXPECT_TRUE(close_rel(convolve_factored(h, g, factorize(p, s)), expected, 1e-15));
      }
    }
  }
  EXPECT_EQ(oracle::divisors(12).size(), 6u);
  EXPECT_EQ(convolve_factored(builtin::one(), builtin::one(), factorize(12, s)), complex(6.0));
  EXPECT_THROW((void)convolve_factored(builtin::omega(), builtin::one(), factorize(12, s)),
               adist::kind_mismatch_error);
}

TEST(ConvolveFactored, EqualsBruteforceUpToTenThousand) {
  const spf_sieve s(10000);
  const auto fam = multiplicative_family();
  for (std::uint64_t m = 1; m <= 10000; ++m) {
    const auto fm = factorize(m, s);
    for (const auto &h : fam) {
      for (const auto &g : fam) {
        ASSERT_TRUE(close_rel(convolve_factored(h, g, fm), convolve_bruteforce(h, g, m, s), 1e-10))
            << h.name() << " * " << g.name() << " at " << m;
      }
    }
  }
}

TEST(ConvolveBruteforce, Commutative) {
  const spf_sieve s(5000);
  const auto fam = multiplicative_family();
  for (std::uint64_t m = 1; m <= 5000; m += 7) {
    for (std::size_t i = 0; i < fam.size(); ++i) {
      for (std::size_t j = i + 1; j < fam.size(); ++j) {
        ASSERT_TRUE(close_rel(convolve_bruteforce(fam[i], fam[j], m, s), convolve_bruteforce(fam[j], fam[i], m, s),
                              1e-12));
      }
    }
  }
}

TEST(MobiusInvert, Examples) {
  const spf_sieve s(100);
  // h = N: (4 - 2)(3 - 1) = phi(12)
  EXPECT_EQ(mobius_invert(builtin::identity(), factorize(12, s)), complex(4.0));
  EXPECT_EQ(oracle::euler_phi(12), 4u);
  EXPECT_EQ(mobius_invert(builtin::identity(), factorize(1, s)), complex(1.0));

  const double t = 1.7;
  const auto f = builtin::log_phi_ratio();
  const auto h = adist::exp_twist(f, t);
  for (std::uint64_t p : {2ull, 5ull, 89ull}) {
    const auto expected = std::polar(1.0, t * f.additive_value(p, 1)) - 1.0;
    EXPECT_EQ(mobius_invert(h, factorize(p, s)), expected);
  }
  EXPECT_THROW((void)mobius_invert(builtin::omega(), factorize(6, s)), adist::kind_mismatch_error);
}

TEST(MobiusInvert, StrongFunctionsVanishOnHigherPowers) {
  const std::vector<adist::function_spec> strong{builtin::one(), adist::exp_twist(builtin::omega(), 0.9),
                                                 adist::exp_twist(builtin::log_phi_ratio(), -3.0)};
  for (const auto &h : strong) {
    ASSERT_TRUE(h.strong());
    for (auto p : adist::primes_up_to(100)) {
      for (unsigned a = 2; a <= 10; ++a) {
        ASSERT_EQ(adist::mobius_invert_prime_power(h, p, a), complex(0.0)) << h.name();
      }
    }
  }
}

TEST(MobiusInvert, EqualsBruteforceWithMobius) {
  const spf_sieve s(10000);
  for (const auto &h : multiplicative_family()) {
    for (std::uint64_t m = 1; m <= 10000; ++m) {
      ASSERT_TRUE(close_rel(mobius_invert(h, factorize(m, s)), convolve_bruteforce(h, builtin::mobius(), m, s),
                            1e-10))
          << h.name() << " at " << m;
    }
  }
}

TEST(InversionTailSum, ZeroFunction) {
  const auto r = adist::inversion_tail_sum(builtin::zero(), 1.0, 1 << 12, 10);
  for (double v : r.partial_sums) EXPECT_EQ(v, 0.0);
  EXPECT_EQ(r.result, adist::verdict::converges);
  EXPECT_EQ(r.cutoffs.front(), 2u);
  EXPECT_EQ(r.cutoffs.back(), 4096u);
}

TEST(InversionTailSum, LogPhiRatioConverges) {
  const auto r = adist::inversion_tail_sum(builtin::log_phi_ratio(), 1.0);
  EXPECT_EQ(r.result, adist::verdict::converges);
  for (std::size_t k = 1; k < r.partial_sums.size(); ++k) EXPECT_GE(r.partial_sums[k], r.partial_sums[k - 1]);
}

TEST(InversionTailSum, StrongTermsAreFirstOrderOnly) {
  // For strong f the series is exactly sum_p |e^{itf(p)} - 1| / p.
  const double t = 2.5;
  const auto f = builtin::log_phi_ratio();
  const auto r = adist::inversion_tail_sum(f, t, 1024, 40);
  double direct = 0;
  for (std::uint64_t p = 2; p <= 1024; ++p) {
    if (oracle::is_prime(p)) direct += std::abs(std::polar(1.0, t * f.additive_value(p, 1)) - 1.0) / double(p);
  }
  EXPECT_NEAR(r.partial_sums.back(), direct, 1e-14);
}

TEST(InversionTailSum, OmegaDiverges) {
  const auto r = adist::inversion_tail_sum(builtin::omega(), 1.0);
  EXPECT_EQ(r.result, adist::verdict::diverges);
  EXPECT_THROW((void)adist::inversion_tail_sum(builtin::omega(), 1.0, 1, 4), std::invalid_argument);
  EXPECT_THROW((void)adist::inversion_tail_sum(builtin::one(), 1.0), adist::kind_mismatch_error);
}
