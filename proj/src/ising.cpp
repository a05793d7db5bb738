#include "qchain/ising.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <set>

#include "qchain/errors.hpp"
#include "qchain/modular.hpp"
#include "qchain/random.hpp"

namespace qchain {

double ising_transition_energy(double J, const GroupoidElement& g) {
  const FlipWord w = g.flips();
  if (w.empty()) return 0.0;
  const int h = w.horizon();
  if (g.point().depth() < h + 1) {
    throw DepthTooSmall("transition energy of " + w.to_string() + " needs depth >= " +
                        std::to_string(h + 1));
  }
  // Bond k joins sites k and k+1 (bits k-1 and k); it changes iff exactly
  // one end flips, and then sbar_k sbar_{k+1} changes sign.
  const std::uint64_t changed = w.mask() ^ (w.mask() >> 1);
  const std::uint64_t x = g.point().mask();
  int sum = 0;
  for (std::uint64_t b = changed; b; b &= b - 1) {
    const int k = std::countr_zero(b);
    sum += (((x >> k) ^ (x >> (k + 1))) & 1u) ? -1 : 1;
  }
  return 2.0 * J * sum;
}

DfsTable ising_dfs_table(double J, int n, int depth) {
  if (depth < n + 1) {
    throw DepthTooSmall("Ising table on Gamma_" + std::to_string(n) + " needs depth >= " +
                        std::to_string(n + 1));
  }
  DfsTable S(n, depth);
  for (std::uint64_t w = 0; w < S.word_count(); ++w) {
    for (std::uint64_t x = 0; x < S.prefix_count(); ++x) {
      S.at(w, x) = ising_transition_energy(J, {Prefix::from_mask(depth, x), FlipWord::from_mask(w)});
    }
  }
  return S;
}

namespace {

double log_ratio(double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw InvalidSpec("lambda must lie in (0, 1)");
  return std::log((1.0 - lambda) / lambda);
}

}  // namespace

double modular_hamiltonian_eval(double lambda, const GroupoidElement& g) {
  const double L = log_ratio(lambda);
  if (g.point().depth() < g.flips().horizon()) throw DepthTooSmall("prefix shorter than flip horizon");
  int k = 0;
  for (int site : g.flips().sites()) k += 2 * g.point().bit(site) - 1;
  return L * k;
}

std::vector<double> modular_spectrum_points(double lambda, int horizon) {
  const double L = log_ratio(lambda);
  if (lambda == 0.5) throw DegenerateSpectrum("lambda = 1/2 collapses the spectrum to {0}");
  if (horizon < 0) throw InvalidSpec("negative horizon");
  std::vector<double> out;
  for (int k = -horizon; k <= horizon; ++k) out.push_back(L * k + 0.0);
  if (L < 0) std::reverse(out.begin(), out.end());
  return out;
}

SpectrumReport attained_spectrum(const MeasureSpec& spec, int horizon) {
  const auto& b = spec.as_bernoulli();
  if (b.lambda.size() != 1) throw InvalidSpec("spectrum needs a constant lambda");
  if (horizon < 0 || horizon > 12) throw HorizonOverflow("spectrum enumeration limited to horizon <= 12");
  SpectrumReport r;
  r.lambda = b.at(1);
  r.horizon = horizon;
  r.log_ratio = log_ratio(r.lambda);
  r.exact = spec.has_exact();

  std::map<Rational, int> powers;
  Rational ratio;
  if (r.exact) {
    const Rational& l = b.exact_at(1);
    ratio = (1 - l) / l;
    for (int k = -horizon; k <= horizon; ++k) powers.emplace(pow(ratio, k), k);
  }

  std::set<int> ks;
  std::set<int> exact_ks;
  std::set<double> values;
  bool on_lattice = true;
  for (const auto& w : enumerate_gamma(horizon)) {
    for (const auto& x : enumerate_prefixes(horizon)) {
      const GroupoidElement g(x, w);
      const double v = modular_hamiltonian_eval(r.lambda, g);
      values.insert(v + 0.0);  // no negative zero
      const int k = r.log_ratio == 0.0 ? 0 : static_cast<int>(std::lround(v / r.log_ratio));
      ks.insert(k);
      r.max_lattice_deviation = std::max(r.max_lattice_deviation, std::abs(v - k * r.log_ratio));
      if (r.exact) {
        const auto it = powers.find(modular_delta_exact(spec, g));
        if (it == powers.end()) {
          on_lattice = false;
        } else {
          // At lambda = 1/2 every power collapses onto the same key.
          exact_ks.insert(ratio == 1 ? 0 : it->second);
        }
      }
    }
  }
  r.attained_k.assign(ks.begin(), ks.end());
  r.attained_values.assign(values.begin(), values.end());
  r.exact_attained_k.assign(exact_ks.begin(), exact_ks.end());
  r.exact_on_lattice = r.exact && on_lattice;
  const auto& reference = r.exact ? r.exact_attained_k : r.attained_k;
  r.complete = r.log_ratio != 0.0 && static_cast<int>(reference.size()) == 2 * horizon + 1 &&
               reference.front() == -horizon && reference.back() == horizon;
  return r;
}

double energy_value(const Energy& energy, const GroupoidElement& g) {
  return std::visit(
      [&g](const auto& e) -> double {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, TransitionEnergy>) {
          return ising_transition_energy(e.J, g);
        } else if constexpr (std::is_same_v<T, ModularHamiltonian>) {
          return modular_hamiltonian_eval(e.lambda, g);
        } else {
          return e(g);
        }
      },
      energy);
}

int energy_required_depth(const Energy& energy, FlipWord w) {
  if (const auto* table = std::get_if<DfsTable>(&energy)) return table->depth();
  if (w.empty()) return 0;
  return std::holds_alternative<TransitionEnergy>(energy) ? w.horizon() + 1 : w.horizon();
}

AlgebraElement tt_evolve(const AlgebraElement& F, double t, const Energy& energy) {
  int d = F.horizon();
  for (const auto& [w, f] : F.terms()) d = std::max(d, energy_required_depth(energy, w));
  AlgebraElement::Terms out;
  for (const auto& [w, f0] : F.terms()) {
    auto f = f0.lifted(d);
    for (std::uint64_t x = 0; x < f.size(); ++x) {
      const double s = energy_value(energy, {Prefix::from_mask(d, x), w});
      f[x] *= std::polar(1.0, s * t);
    }
    out.emplace(w, std::move(f));
  }
  return AlgebraElement(std::move(out));
}

HeisenbergReport heisenberg_equivalence_check(const AlgebraElement& F, const AlgebraElement& psi,
                                              double t, const Energy& energy,
                                              const MeasureSpec& spec) {
  HeisenbergReport r;
  r.t = t;
  if (const auto* e = std::get_if<TransitionEnergy>(&energy)) r.J = e->J;
  if (const auto* e = std::get_if<ModularHamiltonian>(&energy)) r.lambda = e->lambda;

  const auto evolved = tt_evolve(F, t, energy);
  const auto rhs = convolve(evolved, psi);
  const auto lhs = tt_evolve(convolve(F, tt_evolve(psi, -t, energy)), t, energy);
  const auto reversed = tt_evolve(convolve(F, tt_evolve(psi, t, energy)), -t, energy);
  r.max_deviation = max_abs_difference(lhs, rhs);
  r.reversed_sign_deviation = max_abs_difference(reversed, rhs);
  r.norms_before = {l2_norm(F, spec), hahn_norm(F, spec)};
  r.norms_after = {l2_norm(evolved, spec), hahn_norm(evolved, spec)};
  return r;
}

HeisenbergReport heisenberg_equivalence_check(const AlgebraElement& F, const AlgebraElement& psi,
                                              double t, double J) {
  return heisenberg_equivalence_check(F, psi, t, TransitionEnergy{J}, MeasureSpec::ising(J));
}

DfsTable perturbed_energy_table(double J, int n, int depth, double amplitude, std::uint64_t seed) {
  auto S = ising_dfs_table(J, n, depth);
  Rng rng(seed);
  for (std::uint64_t w = 1; w < S.word_count(); ++w) {
    for (std::uint64_t x = 0; x < S.prefix_count(); ++x) S.at(w, x) += rng.uniform(-amplitude, amplitude);
  }
  return S;
}

}  // namespace qchain
