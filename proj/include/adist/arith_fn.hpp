#pragma once

#include "adist/error.hpp"
#include "adist/sieve.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace adist {

using complex = std::complex<double>;

enum class function_kind { additive, strongly_additive, multiplicative, strongly_multiplicative };

[[nodiscard]] constexpr bool is_additive(function_kind k) noexcept {
  return k == function_kind::additive || k == function_kind::strongly_additive;
}
[[nodiscard]] constexpr bool is_multiplicative(function_kind k) noexcept { return !is_additive(k); }
[[nodiscard]] constexpr bool is_strong(function_kind k) noexcept {
  return k == function_kind::strongly_additive || k == function_kind::strongly_multiplicative;
}

[[nodiscard]] constexpr std::string_view to_string(function_kind k) noexcept {
  switch (k) {
    case function_kind::additive: return "additive";
    case function_kind::strongly_additive: return "strongly-additive";
    case function_kind::multiplicative: return "multiplicative";
    case function_kind::strongly_multiplicative: return "strongly-multiplicative";
  }
  return "unknown";
}

[[nodiscard]] inline std::optional<function_kind> parse_function_kind(std::string_view s) noexcept {
  for (auto k : {function_kind::additive, function_kind::strongly_additive, function_kind::multiplicative,
                 function_kind::strongly_multiplicative}) {
    if (to_string(k) == s) {
      return k;
    }
  }
  return std::nullopt;
}

/// An additive or multiplicative arithmetic function, described by its values
/// on prime powers. Additive functions are real-valued; multiplicative ones
/// are complex-valued (real built-ins have zero imaginary part).
///
/// For strong kinds the rule is only ever consulted at exponent 1, so
/// value(p, a) == value(p, 1) holds by construction for every a >= 1.
/// Exponent 0 yields the identity of the kind (0 or 1).
class function_spec {
 public:
  using real_rule = std::function<double(std::uint64_t p, unsigned alpha)>;
  using complex_rule = std::function<complex(std::uint64_t p, unsigned alpha)>;

  static function_spec additive(std::string name, bool strong, real_rule rule) {
    return function_spec(std::move(name), strong ? function_kind::strongly_additive : function_kind::additive,
                         std::move(rule));
  }

  static function_spec multiplicative(std::string name, bool strong, complex_rule rule) {
    return function_spec(std::move(name),
                         strong ? function_kind::strongly_multiplicative : function_kind::multiplicative,
                         std::move(rule));
  }

  [[nodiscard]] const std::string &name() const noexcept { return name_; }
  [[nodiscard]] function_kind kind() const noexcept { return kind_; }
  [[nodiscard]] bool additive() const noexcept { return is_additive(kind_); }
  [[nodiscard]] bool strong() const noexcept { return is_strong(kind_); }

  /// f(p^alpha) of an additive function.
  [[nodiscard]] double additive_value(std::uint64_t p, unsigned alpha) const {
    if (!additive()) {
      throw kind_mismatch_error("function '" + name_ + "' is " + std::string(to_string(kind_)) +
                                ", an additive function is required");
    }
    if (alpha == 0) {
      return 0.0;
    }
    return std::get<real_rule>(rule_)(p, strong() ? 1U : alpha);
  }

  /// g(p^alpha) of a multiplicative function.
  [[nodiscard]] complex multiplicative_value(std::uint64_t p, unsigned alpha) const {
    if (additive()) {
      throw kind_mismatch_error("function '" + name_ + "' is " + std::string(to_string(kind_)) +
                                ", a multiplicative function is required");
    }
    if (alpha == 0) {
      return {1.0, 0.0};
    }
    return std::get<complex_rule>(rule_)(p, strong() ? 1U : alpha);
  }

  /// Value on a prime power regardless of kind (additive values as real
  /// complex numbers).
  [[nodiscard]] complex value(std::uint64_t p, unsigned alpha) const {
    return additive() ? complex{additive_value(p, alpha), 0.0} : multiplicative_value(p, alpha);
  }

 private:
  template <typename Rule>
  function_spec(std::string name, function_kind kind, Rule rule)
      : name_{std::move(name)}, kind_{kind}, rule_{std::move(rule)} {}

  std::string name_;
  function_kind kind_;
  std::variant<real_rule, complex_rule> rule_;
};

inline void require_additive(const function_spec &f) {
  if (!f.additive()) {
    throw kind_mismatch_error("function '" + f.name() + "' must be additive");
  }
}

inline void require_multiplicative(const function_spec &f) {
  if (f.additive()) {
    throw kind_mismatch_error("function '" + f.name() + "' must be multiplicative");
  }
}

/// f(m) = sum over p^a || m of f(p^a), primes ascending; 0 for m = 1.
[[nodiscard]] inline double eval_additive(const function_spec &f, const factored_integer &m) {
  require_additive(f);
  double sum = 0.0;
  for (const auto &[p, a] : m.factors) {
    sum += f.additive_value(p, a);
  }
  return sum;
}

/// g(m) = product over p^a || m of g(p^a), primes ascending; 1 for m = 1.
[[nodiscard]] inline complex eval_multiplicative(const function_spec &g, const factored_integer &m) {
  require_multiplicative(g);
  complex prod{1.0, 0.0};
  for (const auto &[p, a] : m.factors) {
    prod *= g.multiplicative_value(p, a);
  }
  return prod;
}

/// Either of the above, as a complex number.
[[nodiscard]] inline complex evaluate(const function_spec &f, const factored_integer &m) {
  return f.additive() ? complex{eval_additive(f, m), 0.0} : eval_multiplicative(f, m);
}

/// The multiplicative function m -> exp(i t f(m)) of an additive f. Strong
/// input gives strong output.
[[nodiscard]] inline function_spec exp_twist(const function_spec &f, double t) {
  require_additive(f);
  return function_spec::multiplicative("exp_twist(" + f.name() + ")", f.strong(),
                                       [f, t](std::uint64_t p, unsigned alpha) {
                                         return std::polar(1.0, t * f.additive_value(p, alpha));
                                       });
}

/// f(1), ..., f(n) of an additive f.
///
/// Prime-power sweep: for every p^a <= n, rule(p, a) is added to each multiple
/// of p^a that is not a multiple of p^(a+1). Primes are visited in ascending
/// order, so each entry receives exactly the additions eval_additive performs,
/// in the same order, and the result is bit-identical to it.
[[nodiscard]] inline std::vector<double> bulk_eval_additive(const function_spec &f, std::uint64_t n,
                                                            const spf_sieve &sieve) {
  require_additive(f);
  if (n == 0 || n > sieve.limit()) {
    throw std::out_of_range("bulk evaluation bound " + std::to_string(n) + " outside [1, " +
                            std::to_string(sieve.limit()) + "]");
  }
  std::vector<double> out;
  try {
    out.assign(n, 0.0);
  } catch (const std::bad_alloc &) {
    throw resource_error("cannot allocate " + std::to_string(n) + " values");
  }
  for (std::uint64_t p = 2; p <= n; ++p) {
    if (!sieve.is_prime(p)) {
      continue;
    }
    std::uint64_t pk = p;
    for (unsigned a = 1;; ++a) {
      const double v = f.additive_value(p, a);
      // k runs over cofactors m / p^a; skip those divisible by p.
      std::uint64_t residue = 1;
      for (std::uint64_t m = pk; m <= n; m += pk) {
        if (residue != 0) {
          out[m - 1] += v;
        }
        if (++residue == p) {
          residue = 0;
        }
      }
      if (pk > n / p) {
        break;
      }
      pk *= p;
    }
  }
  return out;
}

/// g(1), ..., g(n) of a multiplicative g by per-element factorization.
[[nodiscard]] inline std::vector<complex> bulk_eval_multiplicative(const function_spec &g, std::uint64_t n,
                                                                   const spf_sieve &sieve) {
  require_multiplicative(g);
  if (n == 0 || n > sieve.limit()) {
    throw std::out_of_range("bulk evaluation bound " + std::to_string(n) + " outside [1, " +
                            std::to_string(sieve.limit()) + "]");
  }
  std::vector<complex> out(n);
  for (std::uint64_t m = 1; m <= n; ++m) {
    out[m - 1] = eval_multiplicative(g, factorize(m, sieve));
  }
  return out;
}

namespace builtin {

/// omega(n): number of distinct prime factors.
inline function_spec omega() {
  return function_spec::additive("omega", true, [](std::uint64_t, unsigned) { return 1.0; });
}

/// Omega(n): number of prime factors with multiplicity.
inline function_spec big_omega() {
  return function_spec::additive("big_omega", false, [](std::uint64_t, unsigned a) { return double(a); });
}

/// ln(phi(n)/n); f(p^a) = ln(1 - 1/p).
inline function_spec log_phi_ratio() {
  return function_spec::additive("log_phi_ratio", true,
                                 [](std::uint64_t p, unsigned) { return std::log1p(-1.0 / double(p)); });
}

/// ln(sigma(n)/n); f(p^a) = ln(1 + 1/p + ... + 1/p^a).
inline function_spec log_sigma_ratio() {
  return function_spec::additive("log_sigma_ratio", false, [](std::uint64_t p, unsigned a) {
    const double inv = 1.0 / double(p);
    // ln((1 - p^-(a+1)) / (1 - 1/p))
    return std::log1p(-std::pow(inv, double(a) + 1.0)) - std::log1p(-inv);
  });
}

/// f = 0.
inline function_spec zero() {
  return function_spec::additive("zero", true, [](std::uint64_t, unsigned) { return 0.0; });
}

inline function_spec mobius() {
  return function_spec::multiplicative("mobius", false, [](std::uint64_t, unsigned a) {
    return complex{a == 1 ? -1.0 : 0.0, 0.0};
  });
}

inline function_spec mobius_squared() {
  return function_spec::multiplicative("mobius_squared", false, [](std::uint64_t, unsigned a) {
    return complex{a == 1 ? 1.0 : 0.0, 0.0};
  });
}

/// N(n) = n.
inline function_spec identity() {
  return function_spec::multiplicative("identity", false, [](std::uint64_t p, unsigned a) {
    return complex{std::pow(double(p), double(a)), 0.0};
  });
}

inline function_spec one() {
  return function_spec::multiplicative("one", true, [](std::uint64_t, unsigned) { return complex{1.0, 0.0}; });
}

inline const std::vector<std::string> &names() {
  static const std::vector<std::string> n{"omega", "big_omega",      "log_phi_ratio", "log_sigma_ratio", "zero",
                                          "mobius", "mobius_squared", "identity",      "one"};
  return n;
}

/// Built-in by name; "N" is accepted for identity.
inline std::optional<function_spec> by_name(std::string_view name) {
  if (name == "omega") return omega();
  if (name == "big_omega") return big_omega();
  if (name == "log_phi_ratio") return log_phi_ratio();
  if (name == "log_sigma_ratio") return log_sigma_ratio();
  if (name == "zero") return zero();
  if (name == "mobius") return mobius();
  if (name == "mobius_squared") return mobius_squared();
  if (name == "identity" || name == "N") return identity();
  if (name == "one") return one();
  return std::nullopt;
}

}  // namespace builtin

}  // namespace adist
