#pragma once

#include <algorithm>
#include <cmath>
#include <complex>

namespace qchain {

using Complex = std::complex<double>;

inline constexpr double kRelTol = 1e-12;
inline constexpr double kAbsFloor = 1e-15;
/// Largest cylinder depth an operation will materialize unless overridden.
inline constexpr int kDefaultDepthCap = 20;
/// Hard ceiling on any cylinder table (2^26 complex entries = 1 GiB).
inline constexpr int kMaxTableDepth = 26;

/// Neumaier-compensated accumulator. Results depend only on the order in
/// which terms are added.
template <typename T>
class CompensatedSum {
 public:
  void add(T value) {
    if constexpr (std::is_same_v<T, Complex>) {
      re_.add(value.real());
      im_.add(value.imag());
    } else {
      const T t = sum_ + value;
      if (std::abs(sum_) >= std::abs(value)) {
        comp_ += (sum_ - t) + value;
      } else {
        comp_ += (value - t) + sum_;
      }
      sum_ = t;
    }
  }
  T value() const {
    if constexpr (std::is_same_v<T, Complex>) {
      return {re_.value(), im_.value()};
    } else {
      return sum_ + comp_;
    }
  }

 private:
  struct Empty {};
  T sum_{};
  T comp_{};
  std::conditional_t<std::is_same_v<T, Complex>, CompensatedSum<double>, Empty> re_{}, im_{};
};

/// |a - b| scaled by max(1, |a|, |b|): absolute near zero, relative for
/// large magnitudes.
template <typename T>
double scaled_deviation(const T& a, const T& b) {
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  return std::abs(a - b) / scale;
}

/// Relative comparison with absolute floor.
template <typename T>
bool approx_equal(const T& a, const T& b, double rel = kRelTol, double floor = kAbsFloor) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return std::abs(a - b) <= std::max(floor, rel * scale);
}

}  // namespace qchain
