// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qchain/algebra.hpp"
#include "qchain/dfs.hpp"
#include "qchain/ising.hpp"
#include "qchain/matrix_bridge.hpp"
#include "qchain/measures.hpp"
#include "qchain/modular.hpp"
#include "qchain/random.hpp"

using namespace qchain;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

AlgebraElement draw(Rng& rng, int max_horizon) {
  return random_element(rng, 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_horizon))), 4);
}

Outcome groupoid_axioms() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = check_groupoid_axioms(3);
  const double secs = seconds_since(t0);
  return {r.total_violations() == 0 && r.pairs_checked > 0 && secs < 1.0,
          std::to_string(r.pairs_checked) + " pairs, " + std::to_string(r.triples_checked) + " triples, " +
              std::to_string(r.total_violations()) + " violations, " + fmt("%.3f s", secs)};
}

Outcome haar_radon_nikodym() {
  double flt = 0.0, exact = 0.0, ising = 0.0, oracle_dev = 0.0;
  for (double lambda : {0.2, 0.3, 0.5}) {
    const auto spec = MeasureSpec::bernoulli(lambda);
    for (const auto w : enumerate_gamma(3)) {
      flt = std::max(flt, translation_covariance_check(spec, w, 5).max_deviation);
      exact = std::max(exact, translation_covariance_check_exact(spec, w, 5).max_deviation);
      for (std::uint64_t x = 0; x < 32; ++x) {
        const double ref = oracle::bernoulli_delta(lambda, 5, x, w.mask());
        oracle_dev = std::max(oracle_dev, std::abs(modular_delta(spec, {Prefix::from_mask(5, x), w}) - ref) / ref);
      }
    }
  }
  for (double J : {0.5, 1.0}) {
    const auto spec = MeasureSpec::ising(J);
    for (const auto w : enumerate_gamma(5)) {
      ising = std::max(ising, translation_covariance_check(spec, w, 6).max_deviation);
      for (std::uint64_t x = 0; x < 64; ++x) {
        const double ref = oracle::ising_delta(J, 6, x, w.mask());
        oracle_dev = std::max(oracle_dev, std::abs(modular_delta(spec, {Prefix::from_mask(6, x), w}) - ref) / ref);
      }
    }
  }
  return {exact == 0.0 && flt < 1e-12 && ising < 1e-12 && oracle_dev < 1e-12,
          "bernoulli rational " + fmt("%.3g", exact) + ", float " + fmt("%.3g", flt) + "; ising " +
              fmt("%.3g", ising) + "; delta vs weight-ratio oracle " + fmt("%.3g", oracle_dev)};
}

Outcome modular_homomorphism() {
  double worst = 0.0, exact = 0.0;
  for (double lambda : {0.2, 0.3, 0.5}) {
    worst = std::max(worst, modular_homomorphism_check(MeasureSpec::bernoulli(lambda), 4).max_deviation);
    exact = std::max(exact, modular_homomorphism_check_exact(MeasureSpec::bernoulli(lambda), 4).max_deviation);
  }
  for (double J : {0.5, 1.0}) {
    worst = std::max(worst, modular_homomorphism_check(MeasureSpec::ising(J), 4).max_deviation);
  }
  return {worst < 1e-12 && exact == 0.0,
          "max deviation " + fmt("%.3g", worst) + ", bernoulli rational " + fmt("%.3g", exact)};
}

Outcome convolution_star() {
  double assoc = 0.0, anti = 0.0, oracle_dev = 0.0;
  for (const auto& spec : {MeasureSpec::bernoulli(0.3), MeasureSpec::ising(1.0)}) {
    Rng rng(trial_seed(4, spec.is_ising() ? 1 : 0));
    for (int t = 0; t < 1000; ++t) {
      const auto F = draw(rng, 5), G = draw(rng, 5), H = draw(rng, 5);
      assoc = std::max(assoc, scaled_difference(convolve(convolve(F, G), H), convolve(F, convolve(G, H))));
      anti = std::max(anti, scaled_difference(involution(convolve(F, G), spec),
                                              convolve(involution(G, spec), involution(F, spec))));
      if (t < 50) {
        const auto K = oracle::convolve(oracle::kernel_of(F, 5), oracle::kernel_of(G, 5));
        oracle_dev = std::max(oracle_dev, oracle::max_diff(oracle::kernel_of(convolve(F, G), 5), K));
      }
    }
  }
  return {assoc < 1e-12 && anti < 1e-12 && oracle_dev < 1e-12,
          "associativity " + fmt("%.3g", assoc) + ", anti-multiplicativity " + fmt("%.3g", anti) +
              ", convolution vs dense oracle " + fmt("%.3g", oracle_dev)};
}

Outcome operator_bound() {
  int violations = 0;
  double worst_ratio = 0.0;
  for (const auto& spec : {MeasureSpec::bernoulli(0.3), MeasureSpec::ising(1.0)}) {
    Rng rng(trial_seed(5, spec.is_ising() ? 1 : 0));
    for (int t = 0; t < 1000; ++t) {
      const auto F = draw(rng, 5), psi = draw(rng, 5);
      const double lhs = l2_norm(apply(F, psi, spec), spec);
      const double rhs = hahn_norm(F, spec) * l2_norm(psi, spec);
      if (lhs > rhs + 1e-12 * std::max(1.0, rhs)) ++violations;
      if (rhs > 0) worst_ratio = std::max(worst_ratio, lhs / rhs);
    }
  }
  return {violations == 0, std::to_string(violations) + " violations in 2000 samples, max ratio " +
                               fmt("%.6f", worst_ratio)};
}

Outcome gns_powers() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (double lambda : {0.5, 0.3}) {
    for (int n = 1; n <= 6; ++n) worst = std::max(worst, gns_compare_random(n, 100, lambda, 7).max_abs_deviation);
  }
  const double secs = seconds_since(t0);
  return {worst < 1e-10 && secs < 10.0, "max deviation " + fmt("%.3g", worst) + ", " + fmt("%.2f s", secs)};
}

Outcome traceality() {
  const auto half = MeasureSpec::bernoulli(0.5);
  Rng rng(trial_seed(7, 0));
  double symmetric = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const auto F = draw(rng, 4), G = draw(rng, 4);
    symmetric = std::max(symmetric, std::abs(canonical_weight(convolve(F, G), half) -
                                             canonical_weight(convolve(G, F), half)));
  }
  // Witness at lambda = 0.3: F = flip of site 1 with constant table, G = F*.
  const double lambda = 0.3;
  const auto spec = MeasureSpec::bernoulli(lambda);
  const auto F = AlgebraElement::single(FlipWord{1}, CylinderFunction::constant(1.0));
  const auto G = involution(F, spec);
  const double violation = std::abs(canonical_weight(convolve(F, G), spec) - canonical_weight(convolve(G, F), spec));
  // Integral oracle: tau(F F*) = E[Delta^-1(x, e1)], tau(F* F) = E[Delta(x, e1)],
  // each a two-point sum over x_1.
  double e_inv = 0.0, e_dir = 0.0;
  for (std::uint64_t x = 0; x < 2; ++x) {
    const double p = oracle::bernoulli_weight(lambda, 1, x);
    const double d = oracle::bernoulli_delta(lambda, 1, x, 1);
    e_inv += p / d;
    e_dir += p * d;
  }
  const double floor = std::abs(e_inv - e_dir);
  const double closed = std::abs(1 - (lambda * lambda + (1 - lambda) * (1 - lambda)) / (lambda * (1 - lambda)));
  return {symmetric < 1e-12 && violation >= floor - 1e-12,
          "lambda=0.5 max |tau(FG)-tau(GF)| " + fmt("%.3g", symmetric) + "; lambda=0.3 witness " +
              fmt("%.8f", violation) + " >= oracle floor " + fmt("%.8f", floor) +
              " (closed-form expression evaluates to " + fmt("%.8f", closed) + ", not used as floor)"};
}

Outcome dfs_construction() {
  Rng rng(trial_seed(8, 0));
  double worst = 0.0;
  for (int n = 0; n <= 4; ++n) {
    for (int D = std::max(n, 1); D <= 6; ++D) {
      for (int t = 0; t < 4; ++t) {
        std::vector<RealCylinderFunction> seeds;
        for (int k = 0; k < n; ++k) seeds.push_back(random_real_cylinder(rng, D));
        worst = std::max(worst, dfs_check(dfs_build(n, seeds, D)).max_violation);
      }
    }
  }
  double dd = 0.0;
  for (int t = 0; t < 20; ++t) {
    const auto H = Cochain::from_function(random_real_cylinder(rng, 5), 4);
    dd = std::max(dd, cochain_delta(cochain_delta(H)).max_abs());
  }
  return {worst < 1e-12 && dd < 1e-12,
          "dfs_check max violation " + fmt("%.3g", worst) + ", max |d1 d0 H| " + fmt("%.3g", dd)};
}

Outcome ising_dfs() {
  double check1 = 0.0, check_other = 0.0, oracle_dev = 0.0;
  for (int n = 1; n <= 4; ++n) {
    for (int D = n + 1; D <= 6; ++D) {
      check1 = std::max(check1, dfs_check(ising_dfs_table(1.0, n, D)).max_violation);
      check_other = std::max(check_other, dfs_check(ising_dfs_table(0.37, n, D)).max_violation);
    }
  }
  bool sites_ok = true;
  const double J = 1.0;
  for (int D = 2; D <= 8; ++D) {
    for (int k = 1; k < D; ++k) {
      const double expected = k == 1 ? 2 * J : 4 * J;
      const double s = ising_transition_energy(J, {Prefix::zeros(D), FlipWord::unit(k)});
      const double ref = oracle::energy_difference(J, D, 0, std::uint64_t{1} << (k - 1));
      sites_ok = sites_ok && std::abs(s - ref) < 1e-13 && std::abs(ref - expected) < 1e-13;
    }
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << D); ++x) {
      for (std::uint64_t w = 0; w < (std::uint64_t{1} << std::min(D - 1, 5)); ++w) {
        const double s = ising_transition_energy(J, {Prefix::from_mask(D, x), FlipWord::from_mask(w)});
        oracle_dev = std::max(oracle_dev, std::abs(s - oracle::energy_difference(J, D, x, w)));
      }
    }
  }
  return {check1 == 0.0 && check_other < 1e-13 && sites_ok && oracle_dev < 1e-13,
          "dfs_check J=1 " + fmt("%.3g", check1) + ", J=0.37 " + fmt("%.3g", check_other) +
              "; interior 4J / boundary 2J " + (sites_ok ? "reproduced" : "MISMATCH") +
              "; max |S - brute force| " + fmt("%.3g", oracle_dev)};
}

Outcome partition() {
  double brute_rec = 0.0, ratio = 0.0;
  for (double J : {-1.0, 0.5, 1.0, 2.0}) {
    for (int n = 1; n <= 12; ++n) {
      const auto r = partition_report(J, n);
      brute_rec = std::max(brute_rec, r.brute_vs_recursion);
      ratio = std::max(ratio, r.ratio_identity_deviation);
      brute_rec = std::max(brute_rec, std::abs(r.brute_force - oracle::partition(J, n)) / r.brute_force);
    }
  }
  const auto r = partition_report(1.0, 2);
  return {brute_rec < 1e-12 && ratio < 1e-12 && r.reference_mismatch,
          "brute vs recursion " + fmt("%.3g", brute_rec) + ", ratio identity " + fmt("%.3g", ratio) +
              "; J=1 n=2 brute force " + fmt("%.4f", r.brute_force) + ", reference closed form (2 cosh J)^n " +
              fmt("%.4f", r.reference_closed_form) + (r.reference_mismatch ? " flagged" : " NOT flagged")};
}

Outcome heisenberg() {
  Rng rng(trial_seed(11, 0));
  double worst = 0.0, norms = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto F = random_element(rng, 4, 4), psi = random_element(rng, 4, 4);
    for (double t : {0.37, 1.0, std::numbers::pi}) {
      const auto r = heisenberg_equivalence_check(F, psi, t, 1.0);
      worst = std::max(worst, r.max_deviation);
      norms = std::max({norms, std::abs(r.norms_after.l2 - r.norms_before.l2),
                        std::abs(r.norms_after.hahn - r.norms_before.hahn)});
    }
  }
  const auto table = perturbed_energy_table(1.0, 4, 5, 1.0, 11);
  const auto F = random_element(rng, 4, 4), psi = random_element(rng, 4, 4);
  const double control = heisenberg_equivalence_check(F, psi, 0.37, table, MeasureSpec::ising(1.0)).max_deviation;
  return {worst < 1e-12 && norms < 1e-12 && control > 1e-3,
          "max deviation " + fmt("%.3g", worst) + ", norm drift " + fmt("%.3g", norms) +
              ", non-cocycle control " + fmt("%.4f", control)};
}

Outcome spectrum() {
  bool ok = true;
  double dev = 0.0;
  for (double lambda : {0.3, 0.2}) {
    for (int h = 0; h <= 6; ++h) {
      const auto r = attained_spectrum(MeasureSpec::bernoulli(lambda), h);
      dev = std::max(dev, r.max_lattice_deviation);
      std::vector<int> all;
      for (int k = -h; k <= h; ++k) all.push_back(k);
      ok = ok && r.exact && r.exact_on_lattice && r.complete && r.attained_k == all && r.exact_attained_k == all;
    }
  }
  return {ok && dev < 1e-12, std::string("every |k| <= h attained for h <= 6, exact rational route ") +
                                 (ok ? "agrees" : "DISAGREES") + ", max lattice deviation " + fmt("%.3g", dev)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"groupoid axioms", groupoid_axioms},
      {"haar / radon-nikodym", haar_radon_nikodym},
      {"modular homomorphism", modular_homomorphism},
      {"convolution associativity and star", convolution_star},
      {"operator bound", operator_bound},
      {"gns / powers equality", gns_powers},
      {"traceality dichotomy", traceality},
      {"dfs construction", dfs_construction},
      {"ising dfs / coboundary", ising_dfs},
      {"partition function", partition},
      {"modular flow = heisenberg evolution", heisenberg},
      {"modular spectrum", spectrum},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s criterion %zu: %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
