#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "cylbuck/periodic.hpp"
#include "cylbuck/quadrature.hpp"

using namespace cylbuck;

TEST(Quadrature, GaussIsExactToDegree2nMinus1) {
  for (int n : {1, 3, 8, 16}) {
    const GaussRule g = gauss_legendre(n, -0.3, 1.7);
    for (int d = 0; d < 2 * n; ++d) {
      double sum = 0.0;
      for (int i = 0; i < n; ++i) sum += g.weights(i) * std::pow(g.nodes(i), d);
      const double exact = (std::pow(1.7, d + 1) - std::pow(-0.3, d + 1)) / (d + 1);
      EXPECT_NEAR(sum, exact, 1e-12 * std::max(1.0, std::abs(exact))) << n << " " << d;
    }
  }
}

TEST(Quadrature, LagrangeDifferentiationIsExactOnPolynomials) {
  const GaussRule g = gauss_legendre(6, -0.005, 0.005);
  const Eigen::MatrixXd D = lagrange_differentiation(g.nodes);
  Eigen::VectorXd f(6), df(6);
  for (int i = 0; i < 6; ++i) {
    const double x = g.nodes(i) / 0.005;
    f(i) = 1 + 2 * x - x * x * x + 0.5 * std::pow(x, 5);
    df(i) = (2 - 3 * x * x + 2.5 * std::pow(x, 4)) / 0.005;
  }
  EXPECT_NEAR((D * f - df).cwiseAbs().maxCoeff(), 0.0, 1e-9 * df.cwiseAbs().maxCoeff());
  EXPECT_NEAR(lagrange_row(g.nodes, 0.001) * f, 1 + 2 * 0.2 - 0.008 + 0.5 * std::pow(0.2, 5), 1e-12);
}

TEST(Periodic, SpectralDerivativeIsExactForBandLimited) {
  const double p = 3.0;
  const int n = 32;
  const Eigen::VectorXd x = periodic_grid(n, p);
  const double w = 2 * std::numbers::pi / p;
  Eigen::VectorXd f = (3 * w * x).array().sin() + 0.5 * (5 * w * x).array().cos();
  Eigen::VectorXd df = 3 * w * (3 * w * x).array().cos() - 2.5 * w * (5 * w * x).array().sin();
  EXPECT_NEAR((periodic_derivative(n, p, ThetaScheme::Spectral) * f - df).cwiseAbs().maxCoeff(), 0.0, 1e-11);
}

TEST(Periodic, FiniteDifferenceOrders) {
  const double p = 2 * std::numbers::pi;
  auto err = [&](ThetaScheme s, int n) {
    const Eigen::VectorXd x = periodic_grid(n, p);
    const Eigen::VectorXd f = x.array().sin().exp();
    const Eigen::VectorXd df = x.array().cos() * f.array();
    return (periodic_derivative(n, p, s) * f - df).cwiseAbs().maxCoeff();
  };
  const std::pair<ThetaScheme, int> cases[] = {
      {ThetaScheme::FD2, 2}, {ThetaScheme::FD4, 4}, {ThetaScheme::FD6, 6}, {ThetaScheme::FD8, 8}};
  for (auto [s, order] : cases) {
    const double rate = std::log2(err(s, 64) / err(s, 128));
    EXPECT_NEAR(rate, order, 0.3) << to_string(s);
  }
}

TEST(Periodic, TrigSeriesInterpolatesAndDifferentiates) {
  const double p = 2.0;
  const Eigen::VectorXd x = periodic_grid(64, p);
  const double w = std::numbers::pi;
  Eigen::VectorXd f = 1.0 + 0.3 * (w * x).array().cos() - 0.2 * (3 * w * x).array().sin();
  const TrigSeries s = TrigSeries::from_samples(f, p);
  EXPECT_NEAR(s(0.37), 1 + 0.3 * std::cos(w * 0.37) - 0.2 * std::sin(3 * w * 0.37), 1e-13);
  EXPECT_NEAR(s.derivative(0.37, 2), -0.3 * w * w * std::cos(w * 0.37) + 1.8 * w * w * std::sin(3 * w * 0.37),
              1e-11);
  const auto jet = s.jet(0.9, 3);
  for (int d = 0; d <= 3; ++d) EXPECT_NEAR(jet[d], s.derivative(0.9, d), 1e-12);
  EXPECT_NEAR(s.mean(), 1.0, 1e-14);
}
