#pragma once

// Cylinder measures on Omega_inf: the Bernoulli product measure and the
// free-boundary Ising Boltzmann measure, both given by their finite-depth
// marginals (Kolmogorov families).

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qchain/cylinder.hpp"
#include "qchain/groupoid.hpp"
#include "qchain/rational.hpp"

namespace qchain {

/// nu_i = lambda_i delta_0 + (1 - lambda_i) delta_1. The list holds
/// lambda_1, lambda_2, ...; sites past the end reuse the last entry.
struct Bernoulli {
  std::vector<double> lambda;
  /// Exact counterparts of `lambda`; empty when no exact form is attached.
  std::vector<Rational> exact;

  double at(int site) const;
  const Rational& exact_at(int site) const;
};

/// nu_H^(n)(x) = exp(H_n(x)) / Z_n, H_n(x) = -J sum_{k<n} sbar_k sbar_{k+1}
/// with sbar_k = 2 x_k - 1 and free ends.
struct IsingBoltzmann {
  double J = 0.0;
};

class MeasureSpec {
 public:
  /// Constant lambda; attaches the exact decimal rational of lambda.
  static MeasureSpec bernoulli(double lambda);
  static MeasureSpec bernoulli(std::vector<double> lambdas);
  static MeasureSpec bernoulli_exact(const Rational& lambda);
  static MeasureSpec ising(double J);

  bool is_bernoulli() const { return std::holds_alternative<Bernoulli>(kind_); }
  bool is_ising() const { return std::holds_alternative<IsingBoltzmann>(kind_); }
  /// Exact-rational arithmetic is available (Bernoulli with exact lambdas).
  bool has_exact() const;

  const Bernoulli& as_bernoulli() const;
  const IsingBoltzmann& as_ising() const;

  /// Extra depth beyond a flip word's horizon needed to evaluate the
  /// modular function: 0 for Bernoulli, 1 for Ising (the neighbour of the
  /// last flipped site enters the energy difference).
  int modular_depth_margin() const { return is_ising() ? 1 : 0; }
  /// Prefix depth needed to evaluate Delta on arrows with flips `w`.
  int required_depth(FlipWord w) const {
    return w.empty() ? 0 : w.horizon() + modular_depth_margin();
  }

  std::string describe() const;

 private:
  std::variant<Bernoulli, IsingBoltzmann> kind_;
};

/// Free-boundary energy H_D of a depth-D prefix (the Boltzmann exponent).
double ising_chain_energy(double J, const Prefix& p);

/// nu(C(p)) for the cylinder generated by p.
double cylinder_weight(const MeasureSpec& spec, const Prefix& p);
/// Exact Bernoulli weight; InvalidSpec unless spec.has_exact().
Rational cylinder_weight_exact(const MeasureSpec& spec, const Prefix& p);
/// All 2^depth cylinder weights, indexed by prefix mask.
std::vector<double> cylinder_weights(const MeasureSpec& spec, int depth,
                                     int depth_cap = kDefaultDepthCap);

/// Z_n by the two-state transfer recursion.
double partition_function(double J, int n);
/// Z_n by summing exp(H_n) over all 2^n configurations.
double partition_function_brute_force(double J, int n);

struct PartitionReport {
  double J = 0.0;
  int n = 0;
  double brute_force = 0.0;
  double recursion = 0.0;
  /// 2 (2 cosh J)^(n-1), the free-boundary closed form.
  double free_boundary_closed_form = 0.0;
  /// (2 cosh J)^n, the closed form that drops the boundary factor.
  double reference_closed_form = 0.0;
  double brute_vs_recursion = 0.0;  // relative
  bool reference_mismatch = false;
  /// max over k < n of |Z_n / Z_k - (2 cosh J)^(n-k)| relative.
  double ratio_identity_deviation = 0.0;
};
PartitionReport partition_report(double J, int n);

struct MeasureCheckReport {
  std::string check;
  double max_deviation = 0.0;
  bool exact = false;
  std::string witness;
};

/// Kolmogorov consistency (pi_{n,k})_* nu^(n) = nu^(k): max absolute
/// deviation over all 2^k cylinders.
MeasureCheckReport pushforward_projection_check(const MeasureSpec& spec, int n, int k);
/// Same check in exact arithmetic (Bernoulli with exact lambda).
MeasureCheckReport pushforward_projection_check_exact(const MeasureSpec& spec, int n, int k);

/// Compares nu(C(p (+) w)) with Delta^{-1}(p, w) nu(C(p)) on every depth-
/// `depth` cylinder; reports the max relative deviation.
MeasureCheckReport translation_covariance_check(const MeasureSpec& spec, FlipWord w, int depth);
MeasureCheckReport translation_covariance_check_exact(const MeasureSpec& spec, FlipWord w,
                                                      int depth);

/// |sum_p nu(C(p)) - 1| at the given depth.
double normalization_deviation(const MeasureSpec& spec, int depth);
/// Exact version; returns the (rational) deviation.
Rational normalization_deviation_exact(const MeasureSpec& spec, int depth);

/// Integral of a cylinder function against the measure.
Complex integrate(const MeasureSpec& spec, const CylinderFunction& f);
double integrate(const MeasureSpec& spec, const RealCylinderFunction& f);
Rational integrate_exact(const MeasureSpec& spec, const BasicCylinderFunction<Rational>& f);

}  // namespace qchain
