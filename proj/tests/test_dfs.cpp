#include <gtest/gtest.h>

#include "qchain/dfs.hpp"
#include "qchain/errors.hpp"
#include "qchain/ising.hpp"
#include "qchain/random.hpp"

using namespace qchain;

namespace {

std::vector<RealCylinderFunction> random_seeds(Rng& rng, int n, int depth) {
  std::vector<RealCylinderFunction> seeds;
  for (int k = 0; k < n; ++k) seeds.push_back(random_real_cylinder(rng, depth));
  return seeds;
}

Cochain random_cochain(Rng& rng, int order, int n, int depth) {
  Cochain c(order, n, depth);
  for (std::uint64_t a = 0; a < c.argument_count(); ++a) {
    for (std::uint64_t x = 0; x < c.prefix_count(); ++x) c.at(a, x) = rng.uniform(-1.0, 1.0);
  }
  return c;
}

}  // namespace

TEST(DfsTable, ShapeAndAccess) {
  DfsTable S(2, 3);
  EXPECT_EQ(S.word_count(), 4u);
  EXPECT_EQ(S.prefix_count(), 8u);
  S.at(0b10, 0b101) = 1.5;
  EXPECT_EQ(S({Prefix{1, 0, 1}, FlipWord{2}}), 1.5);
  EXPECT_EQ(S({Prefix{1, 0, 1, 1}, FlipWord{2}}), 1.5);
  EXPECT_THROW(S({Prefix{1, 0, 1}, FlipWord{3}}), HorizonOverflow);
  EXPECT_THROW(S({Prefix{1, 0}, FlipWord{2}}), DepthTooSmall);
  EXPECT_THROW(DfsTable(4, 3), DepthTooSmall);
  EXPECT_THROW(DfsTable(14, 14), HorizonOverflow);
}

TEST(DfsCheck, ZeroTableIsClean) {
  EXPECT_EQ(dfs_check(DfsTable(3, 4)).max_violation, 0.0);
}

TEST(DfsExtend, ZeroSeedKeepsZero) {
  const auto S = dfs_seed_extend(DfsTable(0, 3), RealCylinderFunction::constant(0.0));
  EXPECT_EQ(S, DfsTable(1, 3));
}

TEST(DfsExtend, FirstStepByHand) {
  const double c = 0.75;
  const auto S = dfs_seed_extend(DfsTable(0, 2), RealCylinderFunction::constant(c));
  for (std::uint64_t x = 0; x < 4; ++x) {
    EXPECT_EQ(S.at(0b1, x), (x & 1u) ? -c : c);
    EXPECT_EQ(S.at(0, x), 0.0);
  }
}

TEST(DfsExtend, SecondStepComposesBothWays) {
  const double c1 = 0.4, c2 = -1.3;
  const std::vector<RealCylinderFunction> seeds = {RealCylinderFunction::constant(c1),
                                                   RealCylinderFunction::constant(c2)};
  const auto S = dfs_build(2, seeds, 2);
  for (std::uint64_t x = 0; x < 4; ++x) {
    // S(x, {1,2}) = S(x (+) e2, e1) + S(x, e2) = S(x (+) e1, e2) + S(x, e1)
    EXPECT_DOUBLE_EQ(S.at(0b11, x), S.at(0b01, x ^ 0b10) + S.at(0b10, x));
    EXPECT_DOUBLE_EQ(S.at(0b11, x), S.at(0b10, x ^ 0b01) + S.at(0b01, x));
  }
  EXPECT_EQ(S.at(0b10, 0b00), c2);
  EXPECT_EQ(S.at(0b10, 0b10), -c2);
}

TEST(DfsBuild, RandomSeedsPassExhaustiveCheck) {
  Rng rng(101);
  for (int n = 0; n <= 4; ++n) {
    for (int D = std::max(n, 1); D <= 6; ++D) {
      for (int t = 0; t < 3; ++t) {
        const auto seeds = random_seeds(rng, n, D);
        const auto S = dfs_build(n, seeds, D);
        const auto r = dfs_check(S);
        EXPECT_LT(r.max_violation, 1e-12) << "n=" << n << " D=" << D << " " << r.witness;
        // The seed is honoured on C_k = {x : x_1..x_k = 0}.
        for (int k = 0; k < n; ++k) {
          const std::uint64_t step = std::uint64_t{1} << (k + 1);
          for (std::uint64_t x = 0; x < S.prefix_count(); x += step) {
            EXPECT_EQ(S.at(std::uint64_t{1} << k, x), seeds[static_cast<std::size_t>(k)][x]);
          }
        }
      }
    }
  }
}

TEST(DfsBuild, Errors) {
  Rng rng(1);
  const auto seeds = random_seeds(rng, 3, 3);
  EXPECT_THROW(dfs_build(3, seeds, 2), DepthTooSmall);
  EXPECT_THROW(dfs_build(2, seeds, 4), InvalidSpec);
  DfsTable bad(1, 3);
  bad.at(1, 0) = 1.0;  // no inversion partner
  EXPECT_THROW(dfs_seed_extend(bad, RealCylinderFunction::constant(0.0)), InvariantViolation);
  EXPECT_THROW(dfs_seed_extend(DfsTable(1, 3), RealCylinderFunction(4)), DepthTooSmall);
}

TEST(DfsCheck, DetectsCorruption) {
  Rng rng(5);
  auto S = dfs_build(3, random_seeds(rng, 3, 5), 5);
  S.at(0b101, 0b01101) += 1.0;
  EXPECT_GE(dfs_check(S).max_violation, 1.0 - 1e-12);
  EXPECT_FALSE(dfs_check(S).witness.empty());
}

TEST(DfsBuild, LinearCombinationsStayValid) {
  Rng rng(8);
  for (int t = 0; t < 10; ++t) {
    const auto a = dfs_build(3, random_seeds(rng, 3, 5), 5);
    const auto b = dfs_build(3, random_seeds(rng, 3, 5), 5);
    const double s = rng.uniform(-3.0, 3.0);
    EXPECT_LT(dfs_check(a + s * b).max_violation, 1e-12);
  }
}

TEST(DfsBuild, IsingSeedsReproduceTransitionEnergy) {
  const double J = 0.85;
  const auto ising = ising_dfs_table(J, 2, 4);
  std::vector<RealCylinderFunction> seeds = {ising.entry(FlipWord{1}), ising.entry(FlipWord{2})};
  const auto S = dfs_build(2, seeds, 4);
  for (std::size_t i = 0; i < S.values().size(); ++i) EXPECT_NEAR(S.values()[i], ising.values()[i], 1e-14);
}

TEST(Coboundary, ConstantAndSpin) {
  EXPECT_EQ(coboundary(RealCylinderFunction::constant(2.5), 3), DfsTable(3, 3));
  const auto S = coboundary(spin_function(1), 1);
  EXPECT_EQ(S.at(1, 0), -2.0);
  EXPECT_EQ(S.at(1, 1), 2.0);
}

TEST(Coboundary, IsAlwaysDfs) {
  Rng rng(12);
  for (int t = 0; t < 20; ++t) {
    const auto H = random_real_cylinder(rng, 5);
    EXPECT_LT(dfs_check(coboundary(H, 4)).max_violation, 1e-12);
  }
}

TEST(Cochain, DeltaOneMatchesFormula) {
  Rng rng(13);
  const auto c = random_cochain(rng, 1, 2, 3);
  const auto d = cochain_delta(c);
  for (std::uint64_t g1 = 0; g1 < 4; ++g1) {
    for (std::uint64_t g2 = 0; g2 < 4; ++g2) {
      const std::uint64_t args[] = {g1, g2};
      for (std::uint64_t x = 0; x < 8; ++x) {
        const double ref = c.at(g2, x ^ g1) - c.at(g1 ^ g2, x) + c.at(g1, x);
        EXPECT_NEAR(d.at(d.pack(args), x), ref, 1e-15);
      }
    }
  }
}

TEST(Cochain, DeltaSquaredVanishes) {
  Rng rng(14);
  for (int t = 0; t < 5; ++t) {
    const auto H = Cochain::from_function(random_real_cylinder(rng, 4), 3);
    EXPECT_LT(cochain_delta(cochain_delta(H)).max_abs(), 1e-14);
    EXPECT_LT(cochain_delta(cochain_delta(random_cochain(rng, 1, 3, 4))).max_abs(), 1e-14);
  }
}

TEST(Cochain, DfsFunctionsAreTwoCocycles) {
  Rng rng(15);
  const auto S = dfs_build(3, random_seeds(rng, 3, 4), 4);
  EXPECT_LT(cochain_delta(Cochain::from_table(S)).max_abs(), 1e-13);
  EXPECT_GT(cochain_delta(random_cochain(rng, 1, 3, 4)).max_abs(), 0.1);
}

TEST(Cochain, OrderLimits) {
  EXPECT_THROW(cochain_delta(Cochain(3, 1, 1)), OrderUnsupported);
  EXPECT_THROW(Cochain(1, 2, 2).as_function(), InvalidSpec);
  EXPECT_THROW(Cochain(0, 2, 2).to_table(), InvalidSpec);
}

TEST(IsExact, RecoversPotentialUpToConstant) {
  Rng rng(16);
  for (int D = 1; D <= 5; ++D) {
    const auto H0 = random_real_cylinder(rng, D);
    const auto H = is_exact(coboundary(H0, D));
    ASSERT_TRUE(H.has_value());
    const auto f = H->as_function();
    for (std::uint64_t x = 0; x < f.size(); ++x) EXPECT_NEAR(f[x] - H0[x], f[0] - H0[0], 1e-13);
    EXPECT_EQ(f[0], 0.0);
  }
}

TEST(IsExact, ZeroAndBuiltTables) {
  const auto Z = is_exact(DfsTable(2, 4));
  ASSERT_TRUE(Z.has_value());
  EXPECT_EQ(Z->max_abs(), 0.0);
  Rng rng(17);
  for (int n = 1; n <= 4; ++n) {
    const auto S = dfs_build(n, random_seeds(rng, n, n), n);
    const auto H = is_exact(S);
    ASSERT_TRUE(H.has_value());
    const auto C = coboundary(H->as_function(), n);
    for (std::size_t i = 0; i < S.values().size(); ++i) EXPECT_NEAR(C.values()[i], S.values()[i], 1e-12);
  }
}

TEST(IsExact, RejectsNonCocycle) {
  Rng rng(18);
  EXPECT_FALSE(is_exact(random_cochain(rng, 1, 2, 3).to_table()).has_value());
}
