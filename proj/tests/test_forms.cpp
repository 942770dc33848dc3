#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "cylbuck/error.hpp"
#include "cylbuck/forms.hpp"
#include "oracles.hpp"

using namespace cylbuck;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

TEST(Forms, ElasticityTensorMatchesComponentFormula) {
  const ShellConfig cfg{0.01, 1.0, 2.0, 0.25};
  const IsotropicTensor T = IsotropicTensor::from(cfg);
  Eigen::Matrix3d e;
  e << 1, 2, 3, 2, -1, 0.5, 3, 0.5, 4;
  const Eigen::Matrix3d s = apply_L0(T, e);
  const double lam = 2.0 * 0.25 / (1.25 * 0.5), mu = 2.0 / 2.5;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_NEAR(s(i, j), lam * 4.0 * (i == j) + 2 * mu * e(i, j), 1e-14);
  e(0, 1) += 1e-6;
  EXPECT_THROW(apply_L0(T, e), Error);
}

TEST(Forms, TrivialStressIsExact) {
  const ShellConfig cfg{0.01, 1.0, 3.5, 0.3};
  const Eigen::Matrix3d s = trivial_stress(cfg);
  Eigen::Matrix3d expect = Eigen::Matrix3d::Zero();
  expect(2, 2) = -3.5;
  EXPECT_TRUE(s == expect);
}

TEST(Forms, TrivialBranchMatchesNewtonOracle) {
  for (double nu : {0.1, 0.3, 0.45})
    for (double load : {-0.1, -0.03, 0.0, 1e-6, 0.01, 0.05, 0.1}) {
      const ShellConfig cfg{0.01, 1.0, 1.0, nu};
      EXPECT_NEAR(solve_trivial_branch(cfg, load).stretch, oracle::newton_stretch(cfg, load), 1e-12);
    }
}

TEST(Forms, TrivialBranchSlopeIsPoissonRatio) {
  for (double nu : {0.2, 0.3, 0.4}) {
    const ShellConfig cfg{0.01, 1.0, 1.0, nu};
    const double d = 1e-4;
    const double slope =
        (solve_trivial_branch(cfg, d).stretch - solve_trivial_branch(cfg, -d).stretch) / (2 * d);
    EXPECT_NEAR(slope, nu, 1e-8);
  }
  EXPECT_THROW(solve_trivial_branch(ShellConfig{}, 0.5), Error);
}

TEST(Forms, DestabilizingIdentity) {
  std::mt19937_64 rng(5);
  const CrossSection cs = synthesize_curve(oval_profile(kTwoPi, 64, 0.3));
  const ShellGrid grid(cs, ShellConfig{0.03, 1.0, 1.7, 0.3}, Discretization{4, 64});
  for (int m : {1, 2, 5}) {
    const ModeField f = oracle::random_mode_field(grid, m, Space::VhTheta, rng);
    const double lhs = oracle::destabilizing_integral(f, grid);
    const double rhs = grid.config().E * col3_norm_sq(full_gradient(f, grid), grid);
    EXPECT_NEAR(lhs, rhs, 1e-10 * rhs) << m;
  }
}

TEST(Forms, QuotientsArePositiveAndOrdered) {
  std::mt19937_64 rng(9);
  const CrossSection cs = synthesize_curve(circle_profile(kTwoPi, 64));
  const ShellGrid grid(cs, ShellConfig{0.02, 1.0, 1.0, 0.3}, Discretization{4, 64});
  for (int trial = 0; trial < 10; ++trial) {
    const ModeField f = oracle::random_mode_field(grid, 1 + trial, Space::VhTheta, rng);
    const double kg = korn_quotient(f, grid, KornDenominator::Grad);
    EXPECT_GT(kg, 0.0);
    EXPECT_LE(kg, 1.0 + 1e-12);
    EXPECT_GE(korn_quotient(f, grid, KornDenominator::Col3), kg);  // col3 is part of grad
    EXPECT_GT(rayleigh_cl(f, grid), 0.0);
  }
  const ModeField zero = ModeField::zero(grid, 1, Space::VhTheta);
  try {
    rayleigh_cl(zero, grid);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroDenominator);
  }
}

TEST(Forms, EnergyIsBoundedBySymmetricNorm) {
  // 2 mu |e|^2 <= <L0 e, e> <= (3 lambda + 2 mu) |e|^2
  std::mt19937_64 rng(13);
  const CrossSection cs = synthesize_curve(oval_profile(kTwoPi, 64, 0.2));
  const ShellConfig cfg{0.02, 1.0, 1.0, 0.3};
  const ShellGrid grid(cs, cfg, Discretization{4, 64});
  for (int trial = 0; trial < 10; ++trial) {
    const GradientField e =
        symmetric_part(full_gradient(oracle::random_mode_field(grid, 1 + trial, Space::Vh, rng), grid));
    const double en = energy_form(e, grid), s = weighted_norm_sq(e, grid);
    EXPECT_GE(en, 2 * cfg.lame_mu() * s * (1 - 1e-12));
    EXPECT_LE(en, (3 * cfg.lame_lambda() + 2 * cfg.lame_mu()) * s * (1 + 1e-12));
  }
}
