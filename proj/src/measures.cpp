#include "qchain/measures.hpp"

#include <cmath>
#include <sstream>

#include "qchain/errors.hpp"
#include "qchain/modular.hpp"

namespace qchain {

namespace {

void validate_lambda(double l) {
  if (!(l > 0.0 && l < 1.0)) {
    throw InvalidSpec("Bernoulli lambda must lie in (0, 1), got " + std::to_string(l));
  }
}

void check_cap(int depth, int cap) {
  if (depth < 0) throw DepthTooSmall("negative depth");
  if (depth > cap) {
    throw HorizonOverflow("depth " + std::to_string(depth) + " exceeds depth cap " +
                          std::to_string(cap));
  }
}

// sbar_k sbar_{k+1} summed over the bonds of a depth-D prefix.
int bond_sum(const Prefix& p) {
  int s = 0;
  for (int k = 1; k < p.depth(); ++k) s += p.spin(k) * p.spin(k + 1);
  return s;
}

}  // namespace

double Bernoulli::at(int site) const {
  if (lambda.empty()) throw InvalidSpec("Bernoulli spec without lambda");
  const auto i = static_cast<std::size_t>(site) - 1;
  return i < lambda.size() ? lambda[i] : lambda.back();
}

const Rational& Bernoulli::exact_at(int site) const {
  if (exact.empty()) throw InvalidSpec("Bernoulli spec carries no exact lambda");
  const auto i = static_cast<std::size_t>(site) - 1;
  return i < exact.size() ? exact[i] : exact.back();
}

MeasureSpec MeasureSpec::bernoulli(double lambda) {
  return bernoulli(std::vector<double>{lambda});
}

MeasureSpec MeasureSpec::bernoulli(std::vector<double> lambdas) {
  if (lambdas.empty()) throw InvalidSpec("Bernoulli spec needs at least one lambda");
  Bernoulli b;
  for (double l : lambdas) {
    validate_lambda(l);
    b.exact.push_back(rational_from_double(l));
  }
  b.lambda = std::move(lambdas);
  MeasureSpec s;
  s.kind_ = std::move(b);
  return s;
}

MeasureSpec MeasureSpec::bernoulli_exact(const Rational& lambda) {
  if (!(lambda > 0 && lambda < 1)) throw InvalidSpec("Bernoulli lambda must lie in (0, 1)");
  Bernoulli b;
  b.lambda = {to_double(lambda)};
  b.exact = {lambda};
  MeasureSpec s;
  s.kind_ = std::move(b);
  return s;
}

MeasureSpec MeasureSpec::ising(double J) {
  if (!std::isfinite(J)) throw InvalidSpec("Ising coupling must be finite");
  MeasureSpec s;
  s.kind_ = IsingBoltzmann{J};
  return s;
}

bool MeasureSpec::has_exact() const {
  return is_bernoulli() && !std::get<Bernoulli>(kind_).exact.empty();
}

const Bernoulli& MeasureSpec::as_bernoulli() const {
  if (!is_bernoulli()) throw InvalidSpec("measure is not Bernoulli");
  return std::get<Bernoulli>(kind_);
}

const IsingBoltzmann& MeasureSpec::as_ising() const {
  if (!is_ising()) throw InvalidSpec("measure is not Ising");
  return std::get<IsingBoltzmann>(kind_);
}

std::string MeasureSpec::describe() const {
  std::ostringstream os;
  os.precision(17);
  if (is_bernoulli()) {
    const auto& l = as_bernoulli().lambda;
    os << "bernoulli(lambda=";
    for (std::size_t i = 0; i < l.size(); ++i) os << (i ? "," : "") << l[i];
    os << ")";
  } else {
    os << "ising(J=" << as_ising().J << ")";
  }
  return os.str();
}

double ising_chain_energy(double J, const Prefix& p) { return -J * bond_sum(p); }

double cylinder_weight(const MeasureSpec& spec, const Prefix& p) {
  if (spec.is_bernoulli()) {
    const auto& b = spec.as_bernoulli();
    double w = 1.0;
    for (int i = 1; i <= p.depth(); ++i) w *= p.bit(i) ? 1.0 - b.at(i) : b.at(i);
    return w;
  }
  if (p.depth() == 0) return 1.0;
  const double J = spec.as_ising().J;
  return std::exp(ising_chain_energy(J, p)) / partition_function_brute_force(J, p.depth());
}

Rational cylinder_weight_exact(const MeasureSpec& spec, const Prefix& p) {
  if (!spec.has_exact()) throw InvalidSpec("exact weights need a Bernoulli spec with exact lambda");
  const auto& b = spec.as_bernoulli();
  Rational w(1);
  for (int i = 1; i <= p.depth(); ++i) {
    const Rational& l = b.exact_at(i);
    w *= p.bit(i) ? Rational(1 - l) : l;
  }
  return w;
}

std::vector<double> cylinder_weights(const MeasureSpec& spec, int depth, int depth_cap) {
  check_cap(depth, depth_cap);
  const std::size_t size = std::size_t{1} << depth;
  std::vector<double> w(size);
  if (spec.is_bernoulli()) {
    for (std::uint64_t m = 0; m < size; ++m) w[m] = cylinder_weight(spec, Prefix::from_mask(depth, m));
    return w;
  }
  const double J = spec.as_ising().J;
  CompensatedSum<double> z;
  for (std::uint64_t m = 0; m < size; ++m) {
    w[m] = std::exp(ising_chain_energy(J, Prefix::from_mask(depth, m)));
    z.add(w[m]);
  }
  const double zn = z.value();
  for (auto& v : w) v /= zn;
  return w;
}

double partition_function(double J, int n) {
  if (n < 1) throw DepthTooSmall("partition function needs n >= 1");
  // weight[s] sums exp(H) over chains ending in spin s (0: sbar=-1, 1: sbar=+1).
  double weight[2] = {1.0, 1.0};
  for (int k = 2; k <= n; ++k) {
    double next[2] = {0.0, 0.0};
    for (int s = 0; s < 2; ++s) {
      for (int t = 0; t < 2; ++t) {
        const int product = (2 * s - 1) * (2 * t - 1);
        next[t] += weight[s] * std::exp(-J * product);
      }
    }
    weight[0] = next[0];
    weight[1] = next[1];
  }
  return weight[0] + weight[1];
}

double partition_function_brute_force(double J, int n) {
  if (n < 1) throw DepthTooSmall("partition function needs n >= 1");
  if (n > kMaxTableDepth) throw HorizonOverflow("brute-force partition function limited to n <= 26");
  CompensatedSum<double> z;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    z.add(std::exp(ising_chain_energy(J, Prefix::from_mask(n, m))));
  }
  return z.value();
}

PartitionReport partition_report(double J, int n) {
  PartitionReport r;
  r.J = J;
  r.n = n;
  r.brute_force = partition_function_brute_force(J, n);
  r.recursion = partition_function(J, n);
  const double c = 2.0 * std::cosh(J);
  r.free_boundary_closed_form = 2.0 * std::pow(c, n - 1);
  r.reference_closed_form = std::pow(c, n);
  r.brute_vs_recursion = std::abs(r.brute_force - r.recursion) / r.brute_force;
  r.reference_mismatch = !approx_equal(r.brute_force, r.reference_closed_form);
  for (int k = 1; k < n; ++k) {
    const double ratio = r.brute_force / partition_function_brute_force(J, k);
    const double expected = std::pow(c, n - k);
    r.ratio_identity_deviation =
        std::max(r.ratio_identity_deviation, std::abs(ratio - expected) / expected);
  }
  return r;
}

MeasureCheckReport pushforward_projection_check(const MeasureSpec& spec, int n, int k) {
  if (!(n > k && k >= 1)) throw DepthTooSmall("projection check needs n > k >= 1");
  MeasureCheckReport r{"pushforward_projection", 0.0, false, {}};
  const auto fine = cylinder_weights(spec, n);
  const auto coarse = cylinder_weights(spec, k);
  std::vector<CompensatedSum<double>> marginal(coarse.size());
  const std::uint64_t low = coarse.size() - 1;
  for (std::uint64_t m = 0; m < fine.size(); ++m) marginal[m & low].add(fine[m]);
  for (std::uint64_t m = 0; m < coarse.size(); ++m) {
    const double d = std::abs(marginal[m].value() - coarse[m]);
    if (d > r.max_deviation) {
      r.max_deviation = d;
      r.witness = Prefix::from_mask(k, m).to_string();
    }
  }
  return r;
}

MeasureCheckReport pushforward_projection_check_exact(const MeasureSpec& spec, int n, int k) {
  if (!(n > k && k >= 1)) throw DepthTooSmall("projection check needs n > k >= 1");
  MeasureCheckReport r{"pushforward_projection_exact", 0.0, true, {}};
  check_cap(n, kDefaultDepthCap);
  std::vector<Rational> marginal(std::size_t{1} << k);
  const std::uint64_t low = marginal.size() - 1;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    marginal[m & low] += cylinder_weight_exact(spec, Prefix::from_mask(n, m));
  }
  Rational worst(0);
  for (std::uint64_t m = 0; m < marginal.size(); ++m) {
    Rational d = marginal[m] - cylinder_weight_exact(spec, Prefix::from_mask(k, m));
    if (d < 0) d = -d;
    if (d > worst) {
      worst = d;
      r.witness = Prefix::from_mask(k, m).to_string();
    }
  }
  r.max_deviation = to_double(worst);
  return r;
}

MeasureCheckReport translation_covariance_check(const MeasureSpec& spec, FlipWord w, int depth) {
  if (depth < spec.required_depth(w) || depth < w.horizon()) {
    throw DepthTooSmall("covariance check for " + w.to_string() + " needs depth >= " +
                        std::to_string(std::max(w.horizon(), spec.required_depth(w))));
  }
  MeasureCheckReport r{"translation_covariance", 0.0, false, {}};
  const auto weights = cylinder_weights(spec, depth);
  for (std::uint64_t m = 0; m < weights.size(); ++m) {
    const auto p = Prefix::from_mask(depth, m);
    const double lhs = weights[p.flipped(w).mask()];
    const double rhs = modular_delta_inverse(spec, {p, w}) * weights[m];
    const double d = std::abs(lhs - rhs) / std::max(std::abs(lhs), kAbsFloor);
    if (d > r.max_deviation) {
      r.max_deviation = d;
      r.witness = GroupoidElement(p, w).to_string();
    }
  }
  return r;
}

MeasureCheckReport translation_covariance_check_exact(const MeasureSpec& spec, FlipWord w,
                                                      int depth) {
  if (depth < w.horizon()) throw DepthTooSmall("covariance check needs depth >= horizon");
  check_cap(depth, kDefaultDepthCap);
  MeasureCheckReport r{"translation_covariance_exact", 0.0, true, {}};
  Rational worst(0);
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << depth); ++m) {
    const auto p = Prefix::from_mask(depth, m);
    const Rational lhs = cylinder_weight_exact(spec, p.flipped(w));
    const Rational rhs = cylinder_weight_exact(spec, p) / modular_delta_exact(spec, {p, w});
    Rational d = (lhs - rhs) / lhs;
    if (d < 0) d = -d;
    if (d > worst) {
      worst = d;
      r.witness = GroupoidElement(p, w).to_string();
    }
  }
  r.max_deviation = to_double(worst);
  return r;
}

double normalization_deviation(const MeasureSpec& spec, int depth) {
  CompensatedSum<double> s;
  for (double w : cylinder_weights(spec, depth)) s.add(w);
  return std::abs(s.value() - 1.0);
}

Rational normalization_deviation_exact(const MeasureSpec& spec, int depth) {
  check_cap(depth, kDefaultDepthCap);
  Rational s(0);
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << depth); ++m) {
    s += cylinder_weight_exact(spec, Prefix::from_mask(depth, m));
  }
  Rational d = s - 1;
  return d < 0 ? Rational(-d) : d;
}

Complex integrate(const MeasureSpec& spec, const CylinderFunction& f) {
  const auto w = cylinder_weights(spec, f.depth());
  CompensatedSum<Complex> s;
  for (std::size_t m = 0; m < w.size(); ++m) s.add(f[m] * w[m]);
  return s.value();
}

double integrate(const MeasureSpec& spec, const RealCylinderFunction& f) {
  const auto w = cylinder_weights(spec, f.depth());
  CompensatedSum<double> s;
  for (std::size_t m = 0; m < w.size(); ++m) s.add(f[m] * w[m]);
  return s.value();
}

Rational integrate_exact(const MeasureSpec& spec, const BasicCylinderFunction<Rational>& f) {
  Rational s(0);
  for (std::uint64_t m = 0; m < f.size(); ++m) {
    s += f[m] * cylinder_weight_exact(spec, Prefix::from_mask(f.depth(), m));
  }
  return s;
}

}  // namespace qchain
