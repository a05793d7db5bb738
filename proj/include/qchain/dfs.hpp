#pragma once

// Real DFS functions S on Omega_inf x Gamma_n, tabulated at a fixed prefix
// depth D >= n, and the cochain complex of Gamma_n with coefficients in
// depth-D cylinder functions.
//
// Layout: entry (w, x) lives at index w * 2^D + x, with w the flip mask in
// Gamma_n and x the prefix mask.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qchain/cylinder.hpp"
#include "qchain/groupoid.hpp"

namespace qchain {

class DfsTable {
 public:
  DfsTable() = default;
  /// Zero table; requires 0 <= n <= depth.
  DfsTable(int n, int depth);

  int n() const { return n_; }
  int depth() const { return depth_; }
  std::uint64_t prefix_count() const { return std::uint64_t{1} << depth_; }
  std::uint64_t word_count() const { return std::uint64_t{1} << n_; }

  double at(std::uint64_t w, std::uint64_t x) const { return values_[w * prefix_count() + x]; }
  double& at(std::uint64_t w, std::uint64_t x) { return values_[w * prefix_count() + x]; }

  /// S(g). The point may be longer than the table depth (it is truncated);
  /// the flips must lie in Gamma_n.
  double operator()(const GroupoidElement& g) const;
  RealCylinderFunction entry(FlipWord w) const;
  void set_entry(FlipWord w, const RealCylinderFunction& f);

  const std::vector<double>& values() const { return values_; }

  DfsTable& operator+=(const DfsTable& o);
  DfsTable& operator*=(double c);
  friend DfsTable operator+(DfsTable a, const DfsTable& b) { return a += b; }
  friend DfsTable operator*(double c, DfsTable a) { return a *= c; }
  friend bool operator==(const DfsTable&, const DfsTable&) = default;

 private:
  int n_ = 0;
  int depth_ = 0;
  std::vector<double> values_ = {0.0};
};

struct DfsCheckReport {
  double max_violation = 0.0;
  /// Per-identity maxima.
  double zero_word = 0.0;
  double inversion = 0.0;
  /// S(z, x (+) y) = S(z (+) y, x) + S(z, y)
  double first_equality = 0.0;
  /// S(z, x (+) y) = S(z, x) + S(z (+) x, y)
  double second_equality = 0.0;
  std::string witness;
};

/// Exhaustive check over all depth-D prefixes z and pairs in Gamma_n.
DfsCheckReport dfs_check(const DfsTable& S);

/// Extends a DFS function from Gamma_n to Gamma_{n+1}. The seed is read
/// only on prefixes whose first n+1 bits vanish. Requires depth >= n+1.
/// Throws InvariantViolation when S itself is not a DFS function.
DfsTable dfs_seed_extend(const DfsTable& S, const RealCylinderFunction& seed,
                         double tol = 1e-12);

/// Iterated extension from the zero table on Gamma_0.
DfsTable dfs_build(int n, std::span<const RealCylinderFunction> seeds, int depth);

/// k-cochain on Gamma_n with values in depth-D cylinder functions. The
/// argument tuple (g_1, ..., g_k) is packed as sum_i g_i 2^{n(i-1)}.
class Cochain {
 public:
  Cochain() = default;
  Cochain(int order, int n, int depth);

  /// 0-cochain from a single cylinder function (lifted to depth >= n).
  static Cochain from_function(const RealCylinderFunction& H, int n);
  static Cochain from_table(const DfsTable& S);

  int order() const { return order_; }
  int n() const { return n_; }
  int depth() const { return depth_; }
  std::uint64_t argument_count() const { return std::uint64_t{1} << (n_ * order_); }
  std::uint64_t prefix_count() const { return std::uint64_t{1} << depth_; }

  double at(std::uint64_t args, std::uint64_t x) const { return values_[args * prefix_count() + x]; }
  double& at(std::uint64_t args, std::uint64_t x) { return values_[args * prefix_count() + x]; }
  std::uint64_t pack(std::span<const std::uint64_t> words) const;

  /// Order-1 cochain read as a table S(x, w).
  DfsTable to_table() const;
  RealCylinderFunction as_function() const;

  double max_abs() const;
  const std::vector<double>& values() const { return values_; }

 private:
  int order_ = 0;
  int n_ = 0;
  int depth_ = 0;
  std::vector<double> values_;
};

/// (delta c)(g_1..g_{k+1})(x) = c(g_2..g_{k+1})(x (+) g_1)
///   + sum_{i=1..k} (-1)^i c(.., g_i (+) g_{i+1}, ..)(x) + (-1)^{k+1} c(g_1..g_k)(x).
/// OrderUnsupported for k > 2.
Cochain cochain_delta(const Cochain& c);

/// delta^0 H read as a DFS table: S(x, w) = H(x (+) w) - H(x).
DfsTable coboundary(const RealCylinderFunction& H, int n);

/// Solves S = delta^0 H on the truncation, gauged by H = 0 on prefixes whose
/// first n bits vanish (in particular H(0...0) = 0). Returns the 0-cochain
/// when delta^0 H reproduces S within tol.
std::optional<Cochain> is_exact(const DfsTable& S, double tol = 1e-12);

}  // namespace qchain
