#pragma once

#include "qchain/groupoid.hpp"
#include "qchain/measures.hpp"
#include "qchain/rational.hpp"

namespace qchain {

/// Modular function Delta(g) of the measure.
///
/// Bernoulli: Delta^{-1}(x, w) = prod_{i in w} (lambda_i / (1 - lambda_i))^(2 x_i - 1).
/// Ising:     Delta_H(x, w) = exp(-S(x, w)) with S the transition energy.
///
/// Throws DepthTooSmall when the prefix does not resolve the sites the
/// formula reads (horizon for Bernoulli, horizon + 1 for Ising).
double modular_delta(const MeasureSpec& spec, const GroupoidElement& g);
double modular_delta_inverse(const MeasureSpec& spec, const GroupoidElement& g);

/// log Delta(g), computed without exponentiating.
double log_modular_delta(const MeasureSpec& spec, const GroupoidElement& g);

/// Exact Bernoulli modular function; InvalidSpec unless spec.has_exact().
Rational modular_delta_exact(const MeasureSpec& spec, const GroupoidElement& g);

/// Table of Delta(x, w)^power over all prefixes x of the given depth.
RealCylinderFunction modular_delta_table(const MeasureSpec& spec, FlipWord w, int depth,
                                         double power = 1.0);

/// Exhaustive Delta(alpha o beta) = Delta(alpha) Delta(beta) over all
/// composable pairs with flips in Gamma_horizon, on prefixes of depth
/// horizon + margin. Deviations are scaled by max(1, |lhs|, |rhs|).
MeasureCheckReport modular_homomorphism_check(const MeasureSpec& spec, int horizon);
/// Exact version; max_deviation is 0 iff every pair matches exactly.
MeasureCheckReport modular_homomorphism_check_exact(const MeasureSpec& spec, int horizon);

}  // namespace qchain
