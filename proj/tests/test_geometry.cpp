#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <numbers>

#include "cylbuck/error.hpp"
#include "cylbuck/geometry.hpp"
#include "cylbuck/quadrature.hpp"

using namespace cylbuck;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Position at theta by Gauss quadrature of the tangent angle of the spectral
// interpolant, independent of the library's sample-based integration.
Eigen::Vector2d position_by_quadrature(const CrossSection& cs, double theta) {
  const TrigSeries k = cs.curvature_series();
  const TrigSeries psi_osc = k.periodic_antiderivative();
  const double psi0 = cs.tangent_angle(0);
  auto psi = [&](double s) { return psi0 + k.mean() * s + psi_osc(s); };
  const GaussRule g = gauss_legendre(64, 0.0, 1.0);
  Eigen::Vector2d x = cs.position.row(0).transpose();
  const int panels = 64;
  for (int p = 0; p < panels; ++p) {
    const double a = theta * p / panels, b = theta * (p + 1) / panels;
    for (int i = 0; i < g.nodes.size(); ++i) {
      const double s = a + (b - a) * g.nodes(i);
      x += (b - a) * g.weights(i) * Eigen::Vector2d(std::cos(psi(s)), std::sin(psi(s)));
    }
  }
  return x;
}

}  // namespace

TEST(Geometry, CircleHasUnitCurvatureAndCloses) {
  const CrossSection cs = synthesize_curve(circle_profile(kTwoPi, 512));
  EXPECT_EQ(cs.size(), 512);
  EXPECT_NEAR(cs.curvature.minCoeff(), 1.0, 1e-9);
  EXPECT_NEAR(cs.curvature.maxCoeff(), 1.0, 1e-9);
  EXPECT_LT(closure_residual(cs), 1e-9);
  const Eigen::Vector2d c = cs.position.colwise().mean().transpose();
  for (int j = 0; j < cs.size(); ++j) EXPECT_NEAR((cs.position.row(j).transpose() - c).norm(), 1.0, 1e-9);
}

TEST(Geometry, CurvatureIsTwoPiOverPeriod) {
  const CrossSection cs = synthesize_curve(circle_profile(6.2832, 512));
  EXPECT_NEAR(cs.curvature.maxCoeff(), kTwoPi / 6.2832, 1e-9);
  EXPECT_NEAR(cs.curvature.minCoeff(), kTwoPi / 6.2832, 1e-9);
}

TEST(Geometry, OvalPositionsMatchIndependentQuadrature) {
  const CrossSection cs = synthesize_curve(oval_profile(kTwoPi, 256, 0.3));
  EXPECT_LT(cs.correction.relative_change, 1e-9);  // symmetric oval closes as given
  for (int j : {17, 64, 128, 200}) {
    const Eigen::Vector2d x = position_by_quadrature(cs, cs.theta(j));
    EXPECT_NEAR(x.x(), cs.position(j, 0), 1e-9);
    EXPECT_NEAR(x.y(), cs.position(j, 1), 1e-9);
  }
}

TEST(Geometry, FrameIsOrthonormalAndFollowsFrenet) {
  const CrossSection cs = synthesize_curve(oval_profile(kTwoPi, 256, 0.3));
  for (int j = 0; j < cs.size(); ++j) {
    EXPECT_NEAR(cs.tangent.row(j).norm(), 1.0, 1e-12);
    EXPECT_NEAR(cs.normal.row(j).norm(), 1.0, 1e-12);
    EXPECT_NEAR(cs.tangent.row(j).dot(cs.normal.row(j)), 0.0, 1e-12);
  }
  // alpha'' = -k e_t checked by central differences of the tangent
  const double d = cs.period / cs.size();
  for (int j = 1; j + 1 < cs.size(); j += 31) {
    const Eigen::RowVector2d dtan = (cs.tangent.row(j + 1) - cs.tangent.row(j - 1)) / (2 * d);
    EXPECT_NEAR((dtan + cs.curvature(j) * cs.normal.row(j)).norm(), 0.0, 1e-3);
  }
}

TEST(Geometry, TangentAngleIsMonotone) {
  for (const auto& prof : {oval_profile(kTwoPi, 256, 0.3), flat_spot_profile(kTwoPi, 256, 2)}) {
    const CrossSection cs = synthesize_curve(prof);
    for (int j = 1; j < cs.size(); ++j) EXPECT_GE(cs.tangent_angle(j), cs.tangent_angle(j - 1) - 1e-14);
    EXPECT_NEAR(prof.total_turning(), kTwoPi, 1e-12);
  }
}

TEST(Geometry, FlatSpotHasOneQuadraticZero) {
  const CrossSection cs = synthesize_curve(flat_spot_profile(kTwoPi, 512, 1));
  EXPECT_LT(closure_residual(cs), 1e-9);
  const CurvatureExtrema ex = curvature_extrema(cs);
  EXPECT_NEAR(ex.k_min, 0.0, 1e-12);
  ASSERT_EQ(ex.zeros.size(), 1u);
  const double gap = std::min(std::abs(ex.zeros[0]), std::abs(ex.zeros[0] - cs.period));
  EXPECT_LT(gap, cs.period / cs.size());
  // quadratic growth bounds fitted from the samples
  const double c = quadratic_zero_constant(cs, ex.zeros[0], 0.5);
  ASSERT_GT(c, 0.0);
  ASSERT_LE(c, 1.0);
  int checked = 0;
  for (int j = 0; j < cs.size(); ++j) {
    double s = std::remainder(cs.theta(j) - ex.zeros[0], cs.period);
    if (std::abs(s) > 0.5 || s == 0.0) continue;
    EXPECT_GE(cs.curvature(j), c * s * s * (1 - 1e-12));
    EXPECT_LE(cs.curvature(j), s * s / c * (1 + 1e-12));
    ++checked;
  }
  EXPECT_GT(checked, 50);
  // the series has k(0) = k'(0) = 0 and k''(0) > 0
  const TrigSeries k = cs.curvature_series();
  EXPECT_NEAR(k.derivative(ex.zeros[0], 1), 0.0, 1e-8);
  EXPECT_GT(k.derivative(ex.zeros[0], 2), 0.0);
}

TEST(Geometry, TwoZeroFlatSpotIsSymmetric) {
  const CrossSection cs = synthesize_curve(flat_spot_profile(kTwoPi, 512, 2));
  const auto zeros = curvature_extrema(cs).zeros;
  ASSERT_EQ(zeros.size(), 2u);
  EXPECT_NEAR(zeros[1] - zeros[0], std::numbers::pi, 2 * cs.period / cs.size());
}

TEST(Geometry, RejectsNegativeCurvature) {
  EXPECT_THROW(trig_profile(kTwoPi, 128, {0.0, 1.5}, {}).validate(), Error);
  try {
    trig_profile(kTwoPi, 128, {0.0, 1.5}, {}).validate();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NegativeCurvature);
  }
}

TEST(Geometry, CsvRoundTrip) {
  const CrossSection cs = synthesize_curve(oval_profile(kTwoPi, 128, 0.2));
  const auto path = std::filesystem::temp_directory_path() / "cylbuck_curve_rt.csv";
  write_curve_csv(cs, path);
  const CurvatureProfile back = read_curve_csv(path);
  ASSERT_EQ(back.size(), cs.size());
  EXPECT_NEAR(back.period, cs.period, 1e-12);
  EXPECT_NEAR((back.samples - cs.curvature).cwiseAbs().maxCoeff(), 0.0, 1e-14);
  std::filesystem::remove(path);
}

TEST(Geometry, NonClosingProfileIsCorrectedWithoutLosingZeros) {
  // k = 1 - cos(theta) turns by 2 pi but does not close as given
  const CurvatureProfile p = flat_spot_profile(kTwoPi, 512, 1);
  EXPECT_GT(closure_vector(p).norm(), 1e-3);
  const CrossSection cs = synthesize_curve(p);
  EXPECT_GT(cs.correction.magnitude(), 0.0);
  EXPECT_LT(closure_residual(cs), 1e-9);
  EXPECT_GE(cs.curvature.minCoeff(), 0.0);
  EXPECT_NEAR(cs.curvature(0), 0.0, 1e-14);
}
