#pragma once

// Deterministic randomness for trials: a master seed is expanded into
// per-trial seeds by hashing (master, trial index), so adding trials never
// reshuffles earlier ones.

#include <cstdint>

#include "qchain/algebra.hpp"
#include "qchain/cylinder.hpp"

namespace qchain {

std::uint64_t splitmix64(std::uint64_t x);

/// Seed for trial `index` under `master`.
std::uint64_t trial_seed(std::uint64_t master, std::uint64_t index);

/// xoshiro256** generator. Portable: the same seed yields the same stream
/// on every platform and standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next();
  /// Uniform in [0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);
  Complex complex_uniform() { return {uniform(-1.0, 1.0), uniform(-1.0, 1.0)}; }

 private:
  std::uint64_t s_[4];
};

CylinderFunction random_cylinder(Rng& rng, int depth);
RealCylinderFunction random_real_cylinder(Rng& rng, int depth);

/// Element with up to `max_terms` distinct support words drawn from
/// Gamma_horizon and tables of depth `horizon`.
AlgebraElement random_element(Rng& rng, int horizon, int max_terms);

}  // namespace qchain
