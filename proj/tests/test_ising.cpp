#include <gtest/gtest.h>

#include <numbers>

#include "oracles.hpp"
#include "qchain/errors.hpp"
#include "qchain/ising.hpp"
#include "qchain/modular.hpp"
#include "qchain/random.hpp"

using namespace qchain;

TEST(TransitionEnergy, MatchesBruteForceForEveryTruncation) {
  for (double J : {1.0, -0.6, 0.25}) {
    for (int h = 0; h <= 5; ++h) {
      for (int D = h + 1; D <= 8; ++D) {
        for (std::uint64_t w = 0; w < (std::uint64_t{1} << h); ++w) {
          for (std::uint64_t x = 0; x < (std::uint64_t{1} << D); ++x) {
            const double s = ising_transition_energy(J, {Prefix::from_mask(D, x), FlipWord::from_mask(w)});
            ASSERT_NEAR(s, oracle::energy_difference(J, D, x, w), 1e-13);
          }
        }
      }
    }
  }
}

TEST(TransitionEnergy, InteriorAndBoundaryFlips) {
  const double J = 1.3;
  for (int D = 2; D <= 8; ++D) {
    EXPECT_DOUBLE_EQ(ising_transition_energy(J, {Prefix::zeros(D), FlipWord{1}}), 2 * J);
    for (int k = 2; k < D; ++k) {
      EXPECT_DOUBLE_EQ(ising_transition_energy(J, {Prefix::zeros(D), FlipWord::unit(k)}), 4 * J);
    }
  }
  EXPECT_EQ(ising_transition_energy(J, {Prefix::zeros(0), FlipWord{}}), 0.0);
  EXPECT_THROW(ising_transition_energy(J, {Prefix::zeros(3), FlipWord{3}}), DepthTooSmall);
}

TEST(TransitionEnergy, InversionIdentity) {
  for (std::uint64_t x = 0; x < 32; ++x) {
    for (std::uint64_t w = 0; w < 16; ++w) {
      const auto p = Prefix::from_mask(5, x);
      const auto f = FlipWord::from_mask(w);
      EXPECT_EQ(ising_transition_energy(0.9, {p.flipped(f), f}), -ising_transition_energy(0.9, {p, f}));
    }
  }
}

TEST(IsingTable, PassesDfsCheckExactly) {
  for (int n = 1; n <= 4; ++n) {
    for (int D = n + 1; D <= 6; ++D) EXPECT_EQ(dfs_check(ising_dfs_table(1.0, n, D)).max_violation, 0.0);
  }
  EXPECT_LT(dfs_check(ising_dfs_table(0.37, 4, 6)).max_violation, 1e-13);
  EXPECT_EQ(ising_dfs_table(0.0, 3, 4), DfsTable(3, 4));
  EXPECT_EQ(ising_dfs_table(1.0, 3, 4).at(0b010, 0), 4.0);
  EXPECT_THROW(ising_dfs_table(1.0, 3, 3), DepthTooSmall);
}

TEST(IsingTable, IsCoboundaryOfTruncatedEnergy) {
  const int D = 5;
  const auto H = RealCylinderFunction::tabulate(D, [](const Prefix& p) {
    return oracle::chain_energy(0.8, p.depth(), p.mask());
  });
  const auto C = coboundary(H, 4);
  const auto S = ising_dfs_table(0.8, 4, D);
  for (std::size_t i = 0; i < S.values().size(); ++i) EXPECT_NEAR(S.values()[i], C.values()[i], 1e-13);
  EXPECT_TRUE(is_exact(S).has_value());
}

TEST(ModularHamiltonian, Examples) {
  EXPECT_EQ(modular_hamiltonian_eval(0.5, {Prefix{1, 0, 1}, FlipWord{1, 3}}), 0.0);
  EXPECT_NEAR(modular_hamiltonian_eval(0.3, {Prefix{1}, FlipWord{1}}), std::log(7.0 / 3.0), 1e-15);
  EXPECT_EQ(modular_hamiltonian_eval(0.3, {Prefix{1, 0}, FlipWord{1, 2}}), 0.0);
  EXPECT_THROW(modular_hamiltonian_eval(0.0, {Prefix{1}, FlipWord{1}}), InvalidSpec);
}

TEST(ModularHamiltonian, IsLogOfModularFunction) {
  for (double lambda : {0.1, 0.3, 0.5, 0.8}) {
    const auto spec = MeasureSpec::bernoulli(lambda);
    for (std::uint64_t x = 0; x < 32; ++x) {
      for (std::uint64_t w = 0; w < 32; ++w) {
        const GroupoidElement g(Prefix::from_mask(5, x), FlipWord::from_mask(w));
        EXPECT_NEAR(modular_hamiltonian_eval(lambda, g), std::log(modular_delta(spec, g)), 1e-14);
      }
    }
  }
}

TEST(Spectrum, LatticePoints) {
  const double L = std::log(7.0 / 3.0);
  const auto pts = modular_spectrum_points(0.3, 1);
  ASSERT_EQ(pts.size(), 3u);
  EXPECT_NEAR(pts[0], -L, 1e-15);
  EXPECT_EQ(pts[1], 0.0);
  EXPECT_NEAR(pts[2], L, 1e-15);
  EXPECT_THROW(modular_spectrum_points(0.5, 3), DegenerateSpectrum);
}

TEST(Spectrum, AttainedSetAtHorizonOne) {
  const auto r = attained_spectrum(MeasureSpec::bernoulli(0.3), 1);
  EXPECT_EQ(r.attained_k, (std::vector<int>{-1, 0, 1}));
  EXPECT_EQ(r.exact_attained_k, r.attained_k);
  EXPECT_TRUE(r.complete);
}

TEST(Spectrum, DegenerateAtOneHalf) {
  const auto r = attained_spectrum(MeasureSpec::bernoulli(0.5), 4);
  EXPECT_EQ(r.attained_values, std::vector<double>{0.0});
  EXPECT_FALSE(r.complete);
}

TEST(Spectrum, AttainedValuesFillTheLattice) {
  for (double lambda : {0.3, 0.2, 0.45}) {
    for (int h = 0; h <= 6; ++h) {
      const auto r = attained_spectrum(MeasureSpec::bernoulli(lambda), h);
      EXPECT_TRUE(r.exact);
      EXPECT_TRUE(r.exact_on_lattice);
      EXPECT_EQ(r.max_lattice_deviation, 0.0);
      EXPECT_TRUE(r.complete) << "h=" << h;
      EXPECT_EQ(r.exact_attained_k, r.attained_k);
      const auto pts = modular_spectrum_points(lambda, h);
      ASSERT_EQ(r.attained_values.size(), pts.size());
      for (std::size_t i = 0; i < pts.size(); ++i) EXPECT_NEAR(r.attained_values[i], pts[i], 1e-14);
    }
  }
}

TEST(Evolution, IdentityAndGroupLaw) {
  Rng rng(40);
  const Energy e = TransitionEnergy{1.0};
  for (int t = 0; t < 20; ++t) {
    const auto F = random_element(rng, 4, 4);
    EXPECT_LT(max_abs_difference(tt_evolve(F, 0.0, e), F), 1e-15);
    EXPECT_LT(max_abs_difference(tt_evolve(tt_evolve(F, 0.4, e), 1.1, e), tt_evolve(F, 1.5, e)), 1e-13);
  }
}

TEST(Evolution, UnitaryOnL2) {
  const auto spec = MeasureSpec::ising(1.0);
  const Energy e = TransitionEnergy{1.0};
  Rng rng(41);
  for (int t = 0; t < 50; ++t) {
    const auto F = random_element(rng, 4, 4), G = random_element(rng, 4, 4);
    const double s = rng.uniform(-4.0, 4.0);
    EXPECT_LT(std::abs(inner_product(tt_evolve(F, s, e), tt_evolve(G, s, e), spec) - inner_product(F, G, spec)),
              1e-12);
    EXPECT_NEAR(hahn_norm(tt_evolve(F, s, e), spec), hahn_norm(F, spec), 1e-12);
  }
}

TEST(Evolution, ModularHamiltonianGeneratesModularFlow) {
  const double lambda = 0.3;
  const auto spec = MeasureSpec::bernoulli(lambda);
  Rng rng(42);
  for (int t = 0; t < 20; ++t) {
    const auto F = random_element(rng, 4, 4);
    const double s = rng.uniform(-3.0, 3.0);
    EXPECT_LT(max_abs_difference(tt_evolve(F, s, ModularHamiltonian{lambda}),
                                 modular_operator_pow(F, Complex(0.0, s), spec)),
              1e-13);
  }
}

TEST(Evolution, RequiredDepth) {
  EXPECT_EQ(energy_required_depth(TransitionEnergy{1.0}, FlipWord{3}), 4);
  EXPECT_EQ(energy_required_depth(ModularHamiltonian{0.3}, FlipWord{3}), 3);
  EXPECT_EQ(energy_required_depth(TransitionEnergy{1.0}, FlipWord{}), 0);
  EXPECT_EQ(energy_required_depth(ising_dfs_table(1.0, 2, 5), FlipWord{1}), 5);
}

TEST(Heisenberg, ZeroTime) {
  Rng rng(50);
  const auto F = random_element(rng, 4, 4), psi = random_element(rng, 4, 4);
  EXPECT_EQ(heisenberg_equivalence_check(F, psi, 0.0, 1.0).max_deviation, 0.0);
}

TEST(Heisenberg, HoldsForDfsEnergies) {
  Rng rng(51);
  for (int trial = 0; trial < 30; ++trial) {
    const auto F = random_element(rng, 4, 4), psi = random_element(rng, 4, 4);
    for (double t : {0.37, 1.0, std::numbers::pi}) {
      const auto r = heisenberg_equivalence_check(F, psi, t, 1.0);
      EXPECT_LT(r.max_deviation, 1e-12);
      EXPECT_NEAR(r.norms_after.l2, r.norms_before.l2, 1e-12 * std::max(1.0, r.norms_before.l2));
      EXPECT_NEAR(r.norms_after.hahn, r.norms_before.hahn, 1e-12 * std::max(1.0, r.norms_before.hahn));
      const auto m = heisenberg_equivalence_check(F, psi, t, ModularHamiltonian{0.3}, MeasureSpec::bernoulli(0.3));
      EXPECT_LT(m.max_deviation, 1e-12);
      // A tabulated DFS function from random seeds works as well.
      Rng seeds_rng(static_cast<std::uint64_t>(trial));
      std::vector<RealCylinderFunction> seeds;
      for (int k = 0; k < 4; ++k) seeds.push_back(random_real_cylinder(seeds_rng, 5));
      const auto S = dfs_build(4, seeds, 5);
      EXPECT_LT(heisenberg_equivalence_check(F, psi, t, S, MeasureSpec::ising(1.0)).max_deviation, 1e-12);
    }
  }
}

TEST(Heisenberg, ReversedPhasesDoNotMatch) {
  Rng rng(52);
  const auto F = random_element(rng, 4, 4), psi = random_element(rng, 4, 4);
  EXPECT_GT(heisenberg_equivalence_check(F, psi, 0.37, 1.0).reversed_sign_deviation, 1e-3);
}

TEST(Heisenberg, FailsForNonCocycleEnergy) {
  Rng rng(53);
  const auto table = perturbed_energy_table(1.0, 4, 5, 1.0, 9);
  EXPECT_GT(dfs_check(table).max_violation, 1e-3);
  const auto F = random_element(rng, 4, 4), psi = random_element(rng, 4, 4);
  EXPECT_GT(heisenberg_equivalence_check(F, psi, 0.37, table, MeasureSpec::ising(1.0)).max_deviation, 1e-3);
}
