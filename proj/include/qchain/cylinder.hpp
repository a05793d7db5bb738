#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qchain/errors.hpp"
#include "qchain/groupoid.hpp"
#include "qchain/numeric.hpp"

namespace qchain {

/// Function on Omega_inf that depends only on the first `depth` coordinates,
/// stored as 2^depth values indexed by the prefix bitmask.
template <typename T>
class BasicCylinderFunction {
 public:
  using value_type = T;

  BasicCylinderFunction() : values_(1, T{}) {}

  explicit BasicCylinderFunction(int depth, T fill = T{}) : depth_(check_depth(depth)) {
    values_.assign(std::size_t{1} << depth, fill);
  }

  BasicCylinderFunction(int depth, std::vector<T> values)
      : depth_(check_depth(depth)), values_(std::move(values)) {
    if (values_.size() != (std::size_t{1} << depth)) {
      throw InvalidSpec("cylinder table of depth " + std::to_string(depth) + " needs " +
                        std::to_string(std::size_t{1} << depth) + " values");
    }
  }

  static BasicCylinderFunction constant(T c) { return BasicCylinderFunction(0, c); }

  /// Tabulates f over all prefixes of the given depth.
  static BasicCylinderFunction tabulate(int depth, const std::function<T(const Prefix&)>& f) {
    BasicCylinderFunction out(depth);
    for (std::uint64_t m = 0; m < out.values_.size(); ++m) {
      out.values_[m] = f(Prefix::from_mask(depth, m));
    }
    return out;
  }

  int depth() const { return depth_; }
  std::size_t size() const { return values_.size(); }
  const std::vector<T>& values() const { return values_; }
  std::vector<T>& values() { return values_; }

  /// Raw table access by prefix mask (mask < 2^depth).
  const T& operator[](std::uint64_t mask) const { return values_[mask]; }
  T& operator[](std::uint64_t mask) { return values_[mask]; }

  /// Reads the entry of the first `depth()` bits; DepthTooSmall if the
  /// prefix is shorter than the function's depth.
  T operator()(const Prefix& p) const {
    if (p.depth() < depth_) {
      throw DepthTooSmall("depth-" + std::to_string(depth_) +
                          " cylinder function evaluated on depth-" + std::to_string(p.depth()) +
                          " prefix");
    }
    return values_[p.mask() & (size() - 1)];
  }

  /// Same function tabulated at a larger depth (entries duplicated).
  BasicCylinderFunction lifted(int new_depth) const {
    if (new_depth < depth_) throw DepthTooSmall("cannot lift to a smaller depth");
    if (new_depth == depth_) return *this;
    BasicCylinderFunction out(new_depth);
    const std::uint64_t low = size() - 1;
    for (std::uint64_t m = 0; m < out.size(); ++m) out.values_[m] = values_[m & low];
    return out;
  }

  /// g(x) = f(x (+) w); lifts first if w reaches beyond the table.
  BasicCylinderFunction shifted(FlipWord w) const {
    auto out = lifted(std::max(depth_, w.horizon()));
    const auto base = out.values_;
    for (std::uint64_t m = 0; m < out.size(); ++m) out.values_[m] = base[m ^ w.mask()];
    return out;
  }

  bool is_zero() const {
    for (const auto& v : values_) {
      if (v != T{}) return false;
    }
    return true;
  }

  template <typename F>
  BasicCylinderFunction map(F&& f) const {
    BasicCylinderFunction out = *this;
    for (auto& v : out.values_) v = f(v);
    return out;
  }

  BasicCylinderFunction& operator+=(const BasicCylinderFunction& o) { return combine(o, std::plus<>{}); }
  BasicCylinderFunction& operator-=(const BasicCylinderFunction& o) { return combine(o, std::minus<>{}); }
  BasicCylinderFunction& operator*=(const BasicCylinderFunction& o) { return combine(o, std::multiplies<>{}); }
  BasicCylinderFunction& operator*=(T c) {
    for (auto& v : values_) v *= c;
    return *this;
  }

  friend BasicCylinderFunction operator+(BasicCylinderFunction a, const BasicCylinderFunction& b) { return a += b; }
  friend BasicCylinderFunction operator-(BasicCylinderFunction a, const BasicCylinderFunction& b) { return a -= b; }
  friend BasicCylinderFunction operator*(BasicCylinderFunction a, const BasicCylinderFunction& b) { return a *= b; }
  friend BasicCylinderFunction operator*(T c, BasicCylinderFunction a) { return a *= c; }

  /// Exact equality after lifting both to a common depth.
  friend bool operator==(const BasicCylinderFunction& a, const BasicCylinderFunction& b) {
    const int d = std::max(a.depth_, b.depth_);
    return a.lifted(d).values_ == b.lifted(d).values_;
  }

 private:
  static int check_depth(int depth) {
    if (depth < 0 || depth > kMaxTableDepth) {
      throw HorizonOverflow("cylinder depth " + std::to_string(depth) + " outside [0, " +
                            std::to_string(kMaxTableDepth) + "]");
    }
    return depth;
  }

  template <typename Op>
  BasicCylinderFunction& combine(const BasicCylinderFunction& o, Op op) {
    const int d = std::max(depth_, o.depth_);
    if (d != depth_) *this = lifted(d);
    const std::uint64_t low = o.size() - 1;
    for (std::uint64_t m = 0; m < size(); ++m) values_[m] = op(values_[m], o.values_[m & low]);
    return *this;
  }

  int depth_ = 0;
  std::vector<T> values_;
};

using CylinderFunction = BasicCylinderFunction<Complex>;
using RealCylinderFunction = BasicCylinderFunction<double>;

/// psi_k(x) = +1 if x_k = 0, -1 if x_k = 1.
inline RealCylinderFunction spin_function(int site) {
  return RealCylinderFunction::tabulate(site, [site](const Prefix& p) {
    return static_cast<double>(p.spin(site));
  });
}

inline CylinderFunction to_complex(const RealCylinderFunction& f) {
  std::vector<Complex> v(f.values().begin(), f.values().end());
  return CylinderFunction(f.depth(), std::move(v));
}

/// Largest |f - g| over a common-depth table.
template <typename T>
double max_abs_difference(const BasicCylinderFunction<T>& f, const BasicCylinderFunction<T>& g) {
  const int d = std::max(f.depth(), g.depth());
  const auto a = f.lifted(d);
  const auto b = g.lifted(d);
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace qchain
