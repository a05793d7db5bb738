#include "qchain/modular.hpp"

#include <cmath>
#include <limits>

#include "qchain/errors.hpp"
#include "qchain/ising.hpp"
#include "qchain/numeric.hpp"

namespace qchain {

namespace {

void require_depth(const MeasureSpec& spec, const GroupoidElement& g) {
  const int need = spec.required_depth(g.flips());
  if (g.point().depth() < need) {
    throw DepthTooSmall("modular function on " + g.to_string() + " needs prefix depth >= " +
                        std::to_string(need));
  }
}

}  // namespace

double modular_delta(const MeasureSpec& spec, const GroupoidElement& g) {
  require_depth(spec, g);
  if (spec.is_ising()) return std::exp(-ising_transition_energy(spec.as_ising().J, g));
  const auto& b = spec.as_bernoulli();
  double d = 1.0;
  for (int i : g.flips().sites()) {
    const double l = b.at(i);
    d *= g.point().bit(i) ? (1.0 - l) / l : l / (1.0 - l);
  }
  return d;
}

double modular_delta_inverse(const MeasureSpec& spec, const GroupoidElement& g) {
  require_depth(spec, g);
  if (spec.is_ising()) return std::exp(ising_transition_energy(spec.as_ising().J, g));
  const auto& b = spec.as_bernoulli();
  double d = 1.0;
  for (int i : g.flips().sites()) {
    const double l = b.at(i);
    d *= g.point().bit(i) ? l / (1.0 - l) : (1.0 - l) / l;
  }
  return d;
}

double log_modular_delta(const MeasureSpec& spec, const GroupoidElement& g) {
  require_depth(spec, g);
  if (spec.is_ising()) return -ising_transition_energy(spec.as_ising().J, g);
  const auto& b = spec.as_bernoulli();
  double s = 0.0;
  for (int i : g.flips().sites()) {
    const double l = b.at(i);
    s += (2 * g.point().bit(i) - 1) * std::log((1.0 - l) / l);
  }
  return s;
}

Rational modular_delta_exact(const MeasureSpec& spec, const GroupoidElement& g) {
  if (!spec.has_exact()) throw InvalidSpec("exact modular function needs exact Bernoulli lambda");
  require_depth(spec, g);
  const auto& b = spec.as_bernoulli();
  Rational d(1);
  for (int i : g.flips().sites()) {
    const Rational& l = b.exact_at(i);
    const Rational ratio = (1 - l) / l;
    d *= g.point().bit(i) ? ratio : Rational(1 / ratio);
  }
  return d;
}

RealCylinderFunction modular_delta_table(const MeasureSpec& spec, FlipWord w, int depth,
                                         double power) {
  return RealCylinderFunction::tabulate(depth, [&](const Prefix& p) {
    if (power == 1.0) return modular_delta(spec, {p, w});
    if (power == -1.0) return modular_delta_inverse(spec, {p, w});
    return std::exp(power * log_modular_delta(spec, {p, w}));
  });
}

MeasureCheckReport modular_homomorphism_check(const MeasureSpec& spec, int horizon) {
  MeasureCheckReport r{"modular_homomorphism", 0.0, false, {}};
  const int depth = horizon + spec.modular_depth_margin();
  const auto words = enumerate_gamma(horizon);
  for (const auto& x : enumerate_prefixes(depth)) {
    for (const auto a : words) {
      const GroupoidElement alpha(x, a);
      const double da = modular_delta(spec, alpha);
      for (const auto b : words) {
        const GroupoidElement beta(alpha.source(), b);
        const auto ab = compose(alpha, beta);
        const double d = scaled_deviation(modular_delta(spec, ab), da * modular_delta(spec, beta));
        if (d > r.max_deviation) {
          r.max_deviation = d;
          r.witness = alpha.to_string() + " o " + beta.to_string();
        }
      }
    }
  }
  return r;
}

MeasureCheckReport modular_homomorphism_check_exact(const MeasureSpec& spec, int horizon) {
  MeasureCheckReport r{"modular_homomorphism_exact", 0.0, true, {}};
  const auto words = enumerate_gamma(horizon);
  for (const auto& x : enumerate_prefixes(horizon)) {
    for (const auto a : words) {
      const GroupoidElement alpha(x, a);
      const Rational da = modular_delta_exact(spec, alpha);
      for (const auto b : words) {
        const GroupoidElement beta(alpha.source(), b);
        Rational diff = modular_delta_exact(spec, compose(alpha, beta)) - da * modular_delta_exact(spec, beta);
        if (diff < 0) diff = -diff;
        const double d = to_double(diff);
        if (diff != 0 && d >= r.max_deviation) {
          r.max_deviation = std::max(d, std::numeric_limits<double>::min());
          r.witness = alpha.to_string() + " o " + beta.to_string();
        }
      }
    }
  }
  return r;
}

}  // namespace qchain
