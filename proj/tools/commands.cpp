#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>

#include "qchain/algebra.hpp"
#include "qchain/dfs.hpp"
#include "qchain/errors.hpp"
#include "qchain/groupoid.hpp"
#include "qchain/ising.hpp"
#include "qchain/json_io.hpp"
#include "qchain/matrix_bridge.hpp"
#include "qchain/modular.hpp"
#include "qchain/random.hpp"

namespace qchain::cli {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw UsageError(message);
}

double lambda_of(const RunConfig& cfg) { return cfg.lambdas.front(); }

Report start(const std::string& command, const RunConfig& cfg) {
  Report r;
  r.command = command;
  r.parameters = cfg.to_json();
  return r;
}

// Random element whose horizon is drawn from 1..n.
AlgebraElement draw(Rng& rng, int n) {
  return random_element(rng, 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n))), 4);
}

struct Max {
  double value = 0.0;
  std::string witness;
  void offer(double v, const std::string& where) {
    if (v > value || (witness.empty() && v >= value)) {
      value = v;
      witness = where;
    }
  }
};

std::string trial_label(int t) { return "trial " + std::to_string(t); }

}  // namespace

void RunConfig::validate() const {
  require(measure == "bernoulli" || measure == "ising", "--measure must be bernoulli or ising");
  require(!lambdas.empty(), "--lambda needs at least one value");
  for (double l : lambdas) require(l > 0.0 && l < 1.0, "--lambda values must lie in (0, 1)");
  require(std::isfinite(J), "--J must be finite");
  require(n >= 0, "--n must be non-negative");
  require(depth >= n, "--depth must be at least --n");
  require(depth <= 20, "--depth is capped at 20");
  require(trials >= 0, "--trials must be non-negative");
  require(tol > 0.0, "--tol must be positive");
  require(format == "json" || format == "csv", "--format must be json or csv");
}

MeasureSpec RunConfig::spec() const {
  if (measure == "ising") return MeasureSpec::ising(J);
  return lambdas.size() == 1 ? MeasureSpec::bernoulli(lambdas.front()) : MeasureSpec::bernoulli(lambdas);
}

Json RunConfig::to_json() const {
  Json j;
  j["measure"] = measure;
  j["lambda"] = lambdas;
  j["J"] = J;
  j["n"] = n;
  j["depth"] = depth;
  j["trials"] = trials;
  j["seed"] = seed;
  j["tol"] = tol;
  if (input) j["input"] = *input;
  return j;
}

Report run_axioms(const RunConfig& cfg) {
  require(cfg.n <= 6, "axioms: --n is capped at 6");
  auto r = start("axioms", cfg);
  const auto a = check_groupoid_axioms(cfg.n);
  r.add(Check::at_most("identity_violations", static_cast<double>(a.identity_violations), 0, a.first_witness));
  r.add(Check::at_most("inverse_violations", static_cast<double>(a.inverse_violations), 0, a.first_witness));
  r.add(Check::at_most("source_target_violations", static_cast<double>(a.source_target_violations), 0,
                       a.first_witness));
  r.add(Check::at_most("associativity_violations", static_cast<double>(a.associativity_violations), 0,
                       a.first_witness));
  r.add(Check::at_most("group_law_violations", static_cast<double>(a.group_law_violations), 0,
                       a.first_witness));
  r.details["pairs_checked"] = a.pairs_checked;
  r.details["triples_checked"] = a.triples_checked;
  r.details["total_violations"] = a.total_violations();
  return r;
}

Report run_haar(const RunConfig& cfg) {
  auto r = start("haar", cfg);
  const auto spec = cfg.spec();
  const int D = cfg.depth;

  Max cov;
  Max cov_exact;
  int skipped = 0;
  for (const auto w : enumerate_gamma(cfg.n)) {
    if (spec.required_depth(w) > D) {
      ++skipped;
      continue;
    }
    const auto c = translation_covariance_check(spec, w, D);
    cov.offer(c.max_deviation, c.witness);
    if (spec.has_exact()) {
      const auto e = translation_covariance_check_exact(spec, w, D);
      cov_exact.offer(e.max_deviation, e.witness);
    }
  }
  r.add(Check::at_most("radon_nikodym_covariance", cov.value, cfg.tol, cov.witness));
  if (spec.has_exact()) r.add(Check::at_most("radon_nikodym_covariance_exact", cov_exact.value, 0, cov_exact.witness));

  Max push;
  for (int k = 1; k < D; ++k) {
    const auto p = pushforward_projection_check(spec, D, k);
    push.offer(p.max_deviation, "k=" + std::to_string(k) + " " + p.witness);
  }
  r.add(Check::at_most("kolmogorov_consistency", push.value, cfg.tol, push.witness));
  r.add(Check::at_most("normalization", normalization_deviation(spec, D), cfg.tol));

  const int h = std::min(cfg.n, D - spec.modular_depth_margin());
  const auto hom = modular_homomorphism_check(spec, h);
  r.add(Check::at_most("modular_homomorphism", hom.max_deviation, cfg.tol, hom.witness));
  if (spec.has_exact()) {
    const auto e = modular_homomorphism_check_exact(spec, h);
    r.add(Check::at_most("modular_homomorphism_exact", e.max_deviation, 0, e.witness));
  }
  r.details["measure"] = spec.describe();
  r.details["words_skipped_for_depth"] = skipped;
  r.details["homomorphism_horizon"] = h;
  return r;
}

Report run_algebra(const RunConfig& cfg) {
  require(cfg.n >= 1 && cfg.n <= 6, "algebra: --n must lie in [1, 6]");
  auto r = start("algebra", cfg);
  const auto spec = cfg.spec();
  const auto E = AlgebraElement::unit();
  Max assoc, anti, invol, unitary, jsq, polar;
  double worst_bound = -1e300;
  std::string bound_witness;
  int bound_violations = 0;
  for (int t = 0; t < cfg.trials; ++t) {
    Rng rng(trial_seed(cfg.seed, static_cast<std::uint64_t>(t)));
    const auto F = draw(rng, cfg.n);
    const auto G = draw(rng, cfg.n);
    const auto H = draw(rng, cfg.n);
    const auto label = trial_label(t);
    assoc.offer(scaled_difference(convolve(convolve(F, G), H), convolve(F, convolve(G, H))), label);
    anti.offer(scaled_difference(involution(convolve(F, G), spec),
                                 convolve(involution(G, spec), involution(F, spec))),
               label);
    invol.offer(scaled_difference(involution(involution(F, spec), spec), F), label);
    jsq.offer(scaled_difference(modular_conjugation(modular_conjugation(F, spec), spec), F), label);
    polar.offer(scaled_difference(modular_conjugation(modular_operator_pow(F, 0.5, spec), spec),
                                  involution(F, spec)),
                label);

    const double lhs = l2_norm(convolve(F, G), spec);
    const double rhs = hahn_norm(F, spec) * l2_norm(G, spec);
    const double excess = (lhs - rhs) / std::max(1.0, rhs);
    if (excess > worst_bound) {
      worst_bound = excess;
      bound_witness = label;
    }
    if (excess > cfg.tol) ++bound_violations;

    const auto w = FlipWord::from_mask(1 + rng.below((std::uint64_t{1} << cfg.n) - 1));
    const auto V = pukanszky_V(w, spec);
    unitary.offer(std::max(scaled_difference(convolve(V, involution(V, spec)), E),
                           scaled_difference(convolve(involution(V, spec), V), E)),
                  label + " w=" + w.to_string());
  }
  r.add(Check::at_most("associativity", assoc.value, cfg.tol, assoc.witness));
  r.add(Check::at_most("involution_antimultiplicative", anti.value, cfg.tol, anti.witness));
  r.add(Check::at_most("involution_involutive", invol.value, cfg.tol, invol.witness));
  r.add(Check::at_most("operator_bound_violations", bound_violations, 0, bound_witness));
  r.add(Check::at_most("pukanszky_unitarity", unitary.value, cfg.tol, unitary.witness));
  r.add(Check::at_most("conjugation_involutive", jsq.value, cfg.tol, jsq.witness));
  r.add(Check::at_most("polar_decomposition", polar.value, cfg.tol, polar.witness));
  r.details["operator_bound_worst_relative_excess"] = cfg.trials > 0 ? worst_bound : 0.0;
  return r;
}

Report run_glimm(const RunConfig& cfg) {
  require(cfg.n >= 1 && cfg.n <= 8, "glimm: --n must lie in [1, 8]");
  require(cfg.lambdas.size() == 1, "glimm: a single --lambda is required");
  auto r = start("glimm", cfg);
  const double lambda = lambda_of(cfg);
  const auto g = gns_compare_random(cfg.n, cfg.trials, lambda, cfg.seed);
  r.add(Check::at_most("gns_powers_deviation", g.max_abs_deviation, cfg.tol, g.witness));

  // Diagonal words: exact GNS integral against the exact Powers trace.
  const auto spec = MeasureSpec::bernoulli(lambda);
  int mismatches = 0;
  std::string witness;
  for (const auto w : enumerate_gamma(cfg.n)) {
    std::vector<PauliWord::Letter> letters;
    for (int s : w.sites()) letters.push_back({s, 3});
    const PauliWord word(std::move(letters));
    if (gns_expectation_exact(word, spec) != powers_state_exact(word, cfg.n, spec.as_bernoulli().exact_at(1))) {
      ++mismatches;
      if (witness.empty()) witness = word.to_string();
    }
  }
  r.add(Check::at_most("diagonal_exact_mismatches", mismatches, 0, witness));

  // The state is compatible with the embedding A_n -> A_{n+1}.
  Max embed;
  if (cfg.n < 8) {
    for (int t = 0; t < std::min(cfg.trials, 20); ++t) {
      Rng rng(trial_seed(cfg.seed ^ 0x9e3779b97f4a7c15ULL, static_cast<std::uint64_t>(t)));
      std::vector<PauliWord::Letter> letters;
      for (int k = 1; k <= cfg.n; ++k) {
        const auto c = rng.below(3);
        if (c) letters.push_back({k, c == 1 ? 1 : 3});
      }
      const auto A = pauli_operator(PauliWord(std::move(letters)), cfg.n);
      embed.offer(std::abs(powers_state(A, lambda) - powers_state(A.embedded(), lambda)), trial_label(t));
    }
  }
  r.add(Check::at_most("embedding_compatibility", embed.value, cfg.tol, embed.witness));
  r.details["n"] = g.n;
  r.details["lambda"] = g.lambda;
  r.details["trials"] = g.trials;
  r.details["max_abs_deviation"] = g.max_abs_deviation;
  r.details["seed"] = g.seed;
  return r;
}

Report run_trace(const RunConfig& cfg) {
  require(cfg.n >= 1 && cfg.n <= 6, "trace: --n must lie in [1, 6]");
  auto r = start("trace", cfg);
  const std::vector<double> sweep = cfg.lambda_given ? cfg.lambdas : std::vector<double>{0.5, 0.3, 0.2};
  r.parameters["lambda"] = sweep;
  Json rows = Json::array();
  for (double lambda : sweep) {
    const auto spec = MeasureSpec::bernoulli(lambda);
    const std::string tag = "lambda=" + format_double(lambda);
    Max random_pairs;
    for (int t = 0; t < cfg.trials; ++t) {
      Rng rng(trial_seed(cfg.seed, static_cast<std::uint64_t>(t)));
      const auto F = draw(rng, cfg.n);
      const auto G = draw(rng, cfg.n);
      random_pairs.offer(std::abs(canonical_weight(convolve(F, G), spec) - canonical_weight(convolve(G, F), spec)),
                         trial_label(t));
    }
    Json row{{"lambda", lambda}, {"random_pair_max_violation", random_pairs.value}};
    if (lambda == 0.5) {
      r.add(Check::at_most("trace_property " + tag, random_pairs.value, cfg.tol, random_pairs.witness));
    } else {
      // Unnormalized flip of site 1 against its adjoint.
      const auto F = AlgebraElement::single(FlipWord::unit(1), CylinderFunction::constant(1.0));
      const auto G = involution(F, spec);
      const double violation =
          std::abs(canonical_weight(convolve(F, G), spec) - canonical_weight(convolve(G, F), spec));
      const double floor = std::abs(integrate(spec, modular_delta_table(spec, FlipWord::unit(1), 1, -1.0)) -
                                    integrate(spec, modular_delta_table(spec, FlipWord::unit(1), 1, 1.0)));
      const double closed = std::abs(1.0 - (lambda * lambda + (1 - lambda) * (1 - lambda)) / (lambda * (1 - lambda)));
      r.add(Check::at_least("trace_failure_witness " + tag, violation, floor - cfg.tol, "F = delta_{e1}"));
      row["witness_violation"] = violation;
      row["oracle_floor"] = floor;
      row["closed_form_floor"] = closed;
      row["closed_form_minus_oracle"] = closed - floor;
      const auto V = pukanszky_V(FlipWord::unit(1), spec);
      row["unitary_flip_violation"] =
          std::abs(canonical_weight(convolve(V, involution(V, spec)), spec) -
                   canonical_weight(convolve(involution(V, spec), V), spec));
    }
    rows.push_back(std::move(row));
  }
  r.details["sweep"] = std::move(rows);
  return r;
}

Report run_dfs_build(const RunConfig& cfg) {
  require(cfg.n <= 6, "dfs-build: --n is capped at 6");
  require(cfg.depth >= cfg.n && cfg.depth <= 12, "dfs-build: --depth must lie in [n, 12]");
  auto r = start("dfs-build", cfg);
  Rng rng(cfg.seed);
  std::vector<RealCylinderFunction> seeds;
  for (int k = 0; k < cfg.n; ++k) seeds.push_back(random_real_cylinder(rng, cfg.depth));
  const auto S = dfs_build(cfg.n, seeds, cfg.depth);
  const auto check = dfs_check(S);
  r.add(Check::at_most("dfs_violation", check.max_violation, cfg.tol, check.witness));

  const auto cocycle = cochain_delta(Cochain::from_table(S));
  r.add(Check::at_most("two_cocycle", cocycle.max_abs(), cfg.tol));

  Max dd0, dd1;
  const int samples = std::min(cfg.trials, 20);
  for (int t = 0; t < samples; ++t) {
    Rng trng(trial_seed(cfg.seed, static_cast<std::uint64_t>(t)));
    const auto H = Cochain::from_function(random_real_cylinder(trng, cfg.depth), cfg.n);
    dd0.offer(cochain_delta(cochain_delta(H)).max_abs(), trial_label(t));
    if (3 * cfg.n + cfg.depth <= 20) {
      Cochain c(1, cfg.n, cfg.depth);
      for (std::uint64_t w = 0; w < c.argument_count(); ++w) {
        for (std::uint64_t x = 0; x < c.prefix_count(); ++x) c.at(w, x) = trng.uniform(-1.0, 1.0);
      }
      dd1.offer(cochain_delta(cochain_delta(c)).max_abs(), trial_label(t));
    }
  }
  r.add(Check::at_most("delta1_delta0", dd0.value, cfg.tol, dd0.witness));
  r.add(Check::at_most("delta2_delta1", dd1.value, cfg.tol, dd1.witness));

  // Linear combinations of DFS functions are DFS functions.
  std::vector<RealCylinderFunction> other;
  for (int k = 0; k < cfg.n; ++k) other.push_back(random_real_cylinder(rng, cfg.depth));
  const auto mix = dfs_check(S + (-2.5) * dfs_build(cfg.n, other, cfg.depth));
  r.add(Check::at_most("linear_combination", mix.max_violation, cfg.tol, mix.witness));

  const auto H = is_exact(S);
  r.details["exact_at_truncation"] = H.has_value();
  r.details["zero_word"] = check.zero_word;
  r.details["inversion"] = check.inversion;
  r.details["first_equality"] = check.first_equality;
  r.details["second_equality"] = check.second_equality;
  if (cfg.emit_table) {
    std::ofstream os(*cfg.emit_table);
    if (!os) throw UsageError("cannot write " + *cfg.emit_table);
    os << dfs_table_to_json(S).dump(2) << '\n';
  }
  return r;
}

Report run_dfs_check(const RunConfig& cfg) {
  auto r = start("dfs-check", cfg);
  DfsTable S;
  if (cfg.input) {
    std::ifstream is(*cfg.input);
    if (!is) throw UsageError("cannot read " + *cfg.input);
    Json j;
    try {
      j = Json::parse(is);
    } catch (const Json::parse_error& e) {
      throw UsageError(std::string("malformed table: ") + e.what());
    }
    S = dfs_table_from_json(j);
    r.details["source"] = *cfg.input;
  } else {
    require(cfg.depth >= cfg.n + 1, "dfs-check: the Ising table needs --depth >= n + 1");
    S = ising_dfs_table(cfg.J, cfg.n, cfg.depth);
    r.details["source"] = "ising";
  }
  const auto check = dfs_check(S);
  r.add(Check::at_most("dfs_violation", check.max_violation, cfg.tol, check.witness));
  r.details["n"] = S.n();
  r.details["depth"] = S.depth();
  r.details["zero_word"] = check.zero_word;
  r.details["inversion"] = check.inversion;
  r.details["first_equality"] = check.first_equality;
  r.details["second_equality"] = check.second_equality;
  r.details["exact_at_truncation"] = is_exact(S).has_value();
  return r;
}

Report run_ising_partition(const RunConfig& cfg) {
  require(cfg.n >= 1 && cfg.n <= 20, "ising-partition: --n must lie in [1, 20]");
  auto r = start("ising-partition", cfg);
  const auto p = partition_report(cfg.J, cfg.n);
  r.add(Check::at_most("brute_force_vs_recursion", p.brute_vs_recursion, cfg.tol));
  r.add(Check::at_most("ratio_identity", p.ratio_identity_deviation, cfg.tol));
  r.details["J"] = p.J;
  r.details["n"] = p.n;
  r.details["brute_force"] = p.brute_force;
  r.details["recursion"] = p.recursion;
  r.details["free_boundary_closed_form"] = p.free_boundary_closed_form;
  r.details["reference_closed_form"] = p.reference_closed_form;
  r.details["reference_closed_form_expression"] = "(2 cosh J)^n";
  r.details["reference_mismatch"] = p.reference_mismatch;
  return r;
}

Report run_ising_dynamics(const RunConfig& cfg) {
  require(cfg.n >= 1 && cfg.n <= 6, "ising-dynamics: --n must lie in [1, 6]");
  auto r = start("ising-dynamics", cfg);
  const bool modular = cfg.measure_given && cfg.measure == "bernoulli";
  const Energy energy = modular ? Energy(ModularHamiltonian{lambda_of(cfg)}) : Energy(TransitionEnergy{cfg.J});
  const auto spec = modular ? MeasureSpec::bernoulli(lambda_of(cfg)) : MeasureSpec::ising(cfg.J);
  const std::vector<double> times = {0.37, 1.0, std::numbers::pi};

  Max dev, reversed, l2, hahn;
  for (int t = 0; t < cfg.trials; ++t) {
    Rng rng(trial_seed(cfg.seed, static_cast<std::uint64_t>(t)));
    const auto F = random_element(rng, cfg.n, 4);
    const auto psi = random_element(rng, cfg.n, 4);
    for (double time : times) {
      const auto h = heisenberg_equivalence_check(F, psi, time, energy, spec);
      const auto label = trial_label(t) + " t=" + format_double(time);
      dev.offer(h.max_deviation, label);
      reversed.offer(h.reversed_sign_deviation, label);
      l2.offer(scaled_deviation(h.norms_before.l2, h.norms_after.l2), label);
      hahn.offer(scaled_deviation(h.norms_before.hahn, h.norms_after.hahn), label);
    }
  }
  r.add(Check::at_most("heisenberg_equivalence", dev.value, cfg.tol, dev.witness));
  r.add(Check::at_most("l2_norm_preserved", l2.value, cfg.tol, l2.witness));
  r.add(Check::at_most("hahn_norm_preserved", hahn.value, cfg.tol, hahn.witness));

  // Control: a perturbed, non-cocycle energy must break the identity.
  Max control;
  const auto perturbed = perturbed_energy_table(modular ? 0.0 : cfg.J, cfg.n, cfg.n + 1, 1.0, cfg.seed);
  for (int t = 0; t < std::min(cfg.trials, 10); ++t) {
    Rng rng(trial_seed(cfg.seed, static_cast<std::uint64_t>(t)));
    const auto F = random_element(rng, cfg.n, 4);
    const auto psi = random_element(rng, cfg.n, 4);
    control.offer(heisenberg_equivalence_check(F, psi, 0.37, perturbed, spec).max_deviation, trial_label(t));
  }
  r.add(Check::at_least("non_cocycle_control", control.value, 1e-3, control.witness));
  r.details["energy"] = modular ? "modular_hamiltonian" : "transition_energy";
  r.details["reversed_phase_deviation"] = reversed.value;
  return r;
}

Report run_spectrum(const RunConfig& cfg) {
  require(cfg.n <= 12, "spectrum: --n is capped at 12");
  require(cfg.lambdas.size() == 1, "spectrum: a single --lambda is required");
  auto r = start("spectrum", cfg);
  const double lambda = lambda_of(cfg);
  const auto s = attained_spectrum(MeasureSpec::bernoulli(lambda), cfg.n);
  r.details["log_ratio"] = s.log_ratio;
  r.details["attained_k"] = s.attained_k;
  r.details["attained_values"] = s.attained_values;
  r.details["exact"] = s.exact;
  if (lambda == 0.5) {
    r.add(Check::holds("degenerate_spectrum_is_zero", s.attained_values == std::vector<double>{0.0}));
    r.details["lattice"] = std::vector<double>{0.0};
    return r;
  }
  const auto lattice = modular_spectrum_points(lambda, cfg.n);
  r.details["lattice"] = lattice;
  r.add(Check::at_most("lattice_deviation", s.max_lattice_deviation, cfg.tol));
  if (s.exact) {
    r.add(Check::holds("exact_on_lattice", s.exact_on_lattice));
    r.add(Check::holds("float_and_exact_agree", s.exact_attained_k == s.attained_k));
  }
  r.add(Check::holds("all_lattice_points_attained", s.complete));
  double worst = 0.0;
  if (s.attained_values.size() == lattice.size()) {
    for (std::size_t i = 0; i < lattice.size(); ++i) {
      worst = std::max(worst, scaled_deviation(s.attained_values[i], lattice[i]));
    }
  } else {
    worst = std::numeric_limits<double>::infinity();
  }
  r.add(Check::at_most("attained_equals_lattice", worst, cfg.tol));
  return r;
}

}  // namespace qchain::cli
