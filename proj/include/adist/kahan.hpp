#pragma once

#include <complex>

namespace adist {

/// Kahan-compensated accumulator. Works for double and std::complex<double>
/// (compensation is applied componentwise). Results depend on insertion
/// order only, so a fixed order gives reproducible sums.
template <typename T>
class kahan_sum {
 public:
  constexpr kahan_sum() = default;
  constexpr explicit kahan_sum(T init) : sum_{init} {}

  constexpr void add(const T &x) {
    const T y = x - comp_;
    const T t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
  }

  constexpr kahan_sum &operator+=(const T &x) {
    add(x);
    return *this;
  }

  [[nodiscard]] constexpr T value() const { return sum_; }

 private:
  T sum_{};
  T comp_{};
};

}  // namespace adist
