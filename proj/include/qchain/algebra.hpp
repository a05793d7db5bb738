#pragma once

// The left-Hilbert algebra of the qubit-chain groupoid at finite horizon.
//
// An element F is stored in rank-one form: F(x, x^o) = sum_w delta_w(x^o) F_w(x)
// with finitely many words w and cylinder functions F_w. Binary operations
// lift both operands to a common depth first; spec-dependent operations lift
// far enough for the modular function to be resolved on every support word.

#include <map>
#include <string>

#include "qchain/cylinder.hpp"
#include "qchain/groupoid.hpp"
#include "qchain/measures.hpp"

namespace qchain {

class AlgebraElement {
 public:
  using Terms = std::map<FlipWord, CylinderFunction>;

  AlgebraElement() = default;
  explicit AlgebraElement(Terms terms);

  /// E = delta_0(x^o), the unit of the convolution algebra and the cyclic
  /// vector of the GNS representation.
  static AlgebraElement unit();
  static AlgebraElement single(FlipWord w, CylinderFunction f);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t support_size() const { return terms_.size(); }

  /// F(., w); the zero function when w is outside the support.
  CylinderFunction at(FlipWord w) const;
  Complex operator()(const GroupoidElement& g) const;

  /// Largest of the support words' horizons and the table depths.
  int horizon() const;
  /// Largest horizon among support words only.
  int flip_horizon() const;

  /// Every table tabulated at `depth` (>= horizon()).
  AlgebraElement lifted(int depth) const;

  /// Adds f to the w-component (dropping it if the sum vanishes).
  void accumulate(FlipWord w, const CylinderFunction& f);

  AlgebraElement& operator+=(const AlgebraElement& o);
  AlgebraElement& operator-=(const AlgebraElement& o);
  AlgebraElement& operator*=(Complex c);
  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  friend AlgebraElement operator*(Complex c, AlgebraElement a) { return a *= c; }

  /// Semantic equality (lifting to a common depth).
  friend bool operator==(const AlgebraElement& a, const AlgebraElement& b);

 private:
  void drop_zeros();
  Terms terms_;
};

/// Largest |F(x, w) - G(x, w)| over the union of supports at common depth.
double max_abs_difference(const AlgebraElement& F, const AlgebraElement& G);
/// As above, scaled by max(1, largest entry magnitude).
double scaled_difference(const AlgebraElement& F, const AlgebraElement& G);

/// Depth at which every spec-dependent quantity on supp(F) is resolved.
int working_depth(const AlgebraElement& F, const MeasureSpec& spec);

/// (F * G)(x, x^o) = sum_{y^o} F(x, y^o) G(x (+) y^o, x^o (+) y^o).
AlgebraElement convolve(const AlgebraElement& F, const AlgebraElement& G,
                        int depth_cap = kDefaultDepthCap);

/// F^dagger(alpha) = Delta^{-1}(alpha) conj(F(alpha^{-1})).
AlgebraElement involution(const AlgebraElement& F, const MeasureSpec& spec);

/// L^2(G, nu x counting) inner product, antilinear in the first slot.
Complex inner_product(const AlgebraElement& F, const AlgebraElement& G, const MeasureSpec& spec);
double l2_norm(const AlgebraElement& F, const MeasureSpec& spec);

struct HahnNorm {
  double value = 0.0;
  /// sup_x sum_w |F(x, w)|
  double target_branch = 0.0;
  /// sup_x sum_w Delta^{-1}(x, w) |F(x (+) w, w)|
  double source_branch = 0.0;
};
HahnNorm hahn_norm_branches(const AlgebraElement& F, const MeasureSpec& spec);
double hahn_norm(const AlgebraElement& F, const MeasureSpec& spec);

/// Left regular representation pi_F psi = F * psi. Bounded by the Hahn
/// norm: ||F * psi||_2 <= ||F||_H ||psi||_2.
AlgebraElement apply(const AlgebraElement& F, const AlgebraElement& psi, const MeasureSpec& spec);

/// Unitary flip V_w: delta_w(x^o) Delta(x, w)^{-1/2}.
AlgebraElement pukanszky_V(FlipWord w, const MeasureSpec& spec);
/// Multiplication L_phi: delta_0(x^o) phi(x).
AlgebraElement pukanszky_L(const CylinderFunction& phi);

/// (J F)(alpha) = Delta^{-1/2}(alpha) conj(F(alpha^{-1})). Antilinear, J^2 = 1.
AlgebraElement modular_conjugation(const AlgebraElement& F, const MeasureSpec& spec);

/// (Delta-hat^t F)(alpha) = Delta(alpha)^t F(alpha). Imaginary t gives the
/// modular flow.
AlgebraElement modular_operator_pow(const AlgebraElement& F, Complex t, const MeasureSpec& spec);

/// tau(F) = integral of F(x, 0) = <E, F * E>.
Complex canonical_weight(const AlgebraElement& F, const MeasureSpec& spec);

}  // namespace qchain
