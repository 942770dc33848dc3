#include "cylbuck/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "cylbuck/error.hpp"

namespace cylbuck {

GaussRule gauss_legendre(int n, double a, double b) {
  if (n < 1) throw Error(ErrorCode::DimensionMismatch, "gauss_legendre needs n >= 1");
  GaussRule rule{Eigen::VectorXd(n), Eigen::VectorXd(n)};
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (b + a);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute derivative at the converged root.
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = (n == 1) ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes(i) = mid - half * x;
    rule.nodes(n - 1 - i) = mid + half * x;
    rule.weights(i) = half * w;
    rule.weights(n - 1 - i) = half * w;
  }
  if (n % 2 == 1) rule.nodes(n / 2) = mid;
  return rule;
}

namespace {

Eigen::VectorXd barycentric_weights(const Eigen::VectorXd& x) {
  const Eigen::Index n = x.size();
  Eigen::VectorXd w = Eigen::VectorXd::Ones(n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (i != j) w(i) /= (x(i) - x(j));
  return w;
}

}  // namespace

Eigen::MatrixXd lagrange_differentiation(const Eigen::VectorXd& nodes) {
  const Eigen::Index n = nodes.size();
  const Eigen::VectorXd w = barycentric_weights(nodes);
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double diag = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j) continue;
      d(i, j) = (w(j) / w(i)) / (nodes(i) - nodes(j));
      diag -= d(i, j);
    }
    d(i, i) = diag;
  }
  return d;
}

Eigen::RowVectorXd lagrange_row(const Eigen::VectorXd& nodes, double x) {
  const Eigen::Index n = nodes.size();
  Eigen::RowVectorXd row(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    double l = 1.0;
    for (Eigen::Index k = 0; k < n; ++k)
      if (k != j) l *= (x - nodes(k)) / (nodes(j) - nodes(k));
    row(j) = l;
  }
  return row;
}

}  // namespace cylbuck
