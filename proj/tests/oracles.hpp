#pragma once

// Independent reference computations shared by the unit tests and the
// acceptance binary. None of these reuse the library's frame formulas.

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <cmath>
#include <numbers>
#include <random>

#include "cylbuck/discretize.hpp"
#include "cylbuck/forms.hpp"
#include "cylbuck/geometry.hpp"
#include "cylbuck/quadrature.hpp"
#include "cylbuck/shell_fields.hpp"

namespace oracle {

using namespace cylbuck;

/// Smooth random mode field: low-order trigonometric in theta, polynomial
/// of degree < nt in t, so both derivative schemes resolve it well.
inline ModeField random_mode_field(const ShellGrid& grid, int m, Space space, std::mt19937_64& rng) {
  std::normal_distribution<double> n01;
  ModeField f = ModeField::zero(grid, m, space);
  const double w = 2.0 * std::numbers::pi / grid.period();
  const double hh = grid.config().h;
  for (int c = 0; c < 3; ++c) {
    if (m == 0 && space == Space::VhTheta && c == 1) continue;
    for (int deg = 0; deg < 3; ++deg)
      for (int n = 0; n <= 3; ++n) {
        const double a = n01(rng) / (1 + deg + n), b = n01(rng) / (1 + deg + n);
        for (int i = 0; i < grid.nt(); ++i)
          for (int j = 0; j < grid.ntheta(); ++j) {
            const double x = grid.theta()(j);
            f.component(c)(i, j) += std::pow(grid.t()(i) / hh, deg) * (a * std::cos(w * n * x) + b * std::sin(w * n * x));
          }
      }
  }
  return f;
}

/// Circle of radius R traced counterclockwise from the point where the
/// synthesized section starts. Maps Cartesian points to (t, theta).
struct CircleChart {
  double R = 1.0;
  Eigen::Vector2d center;
  double phase = 0.0;  // polar angle of the normal at theta = 0

  explicit CircleChart(const CrossSection& cs) {
    R = cs.period / (2.0 * std::numbers::pi);
    const Eigen::Vector2d n0 = cs.normal.row(0).transpose();
    center = cs.position.row(0).transpose() - R * n0;
    phase = std::atan2(n0.y(), n0.x());
  }
  Eigen::Vector2d normal(double theta) const { return {std::cos(phase + theta / R), std::sin(phase + theta / R)}; }
  Eigen::Vector2d tangent(double theta) const { return {-std::sin(phase + theta / R), std::cos(phase + theta / R)}; }
  void coordinates(const Eigen::Vector3d& x, double& t, double& theta) const {
    const Eigen::Vector2d d = x.head<2>() - center;
    t = d.norm() - R;
    double ang = std::atan2(d.y(), d.x()) - phase;
    theta = R * ang;
  }
  /// Frame matrix with columns e_t, e_theta, e_z.
  Eigen::Matrix3d frame(double theta) const {
    Eigen::Matrix3d Q = Eigen::Matrix3d::Zero();
    Q.block<2, 1>(0, 0) = normal(theta);
    Q.block<2, 1>(0, 1) = tangent(theta);
    Q(2, 2) = 1.0;
    return Q;
  }
};

/// Local-frame gradient (component a, direction b) of the displacement
/// `local(t, theta, z)` (frame components) by central differences of the
/// Cartesian field at the point with coordinates (t, theta, z).
template <class Field>
Eigen::Matrix3d cartesian_fd_gradient(const CircleChart& chart, const Field& local, double t, double theta, double z,
                                      double step = 1e-6) {
  auto cart = [&](const Eigen::Vector3d& x) {
    double tt, th;
    chart.coordinates(x, tt, th);
    return Eigen::Vector3d(chart.frame(th) * local(tt, th, x.z()));
  };
  Eigen::Vector3d x;
  x.head<2>() = chart.center + (chart.R + t) * chart.normal(theta);
  x.z() = z;
  Eigen::Matrix3d D;
  for (int j = 0; j < 3; ++j) {
    Eigen::Vector3d e = Eigen::Vector3d::Zero();
    e(j) = step;
    D.col(j) = (cart(x + e) - cart(x - e)) / (2.0 * step);
  }
  const Eigen::Matrix3d Q = chart.frame(theta);
  return Q.transpose() * D * Q;
}

/// Lateral equilibrium of the homogeneous SVK state solved by Newton in a.
inline double newton_stretch(const ShellConfig& cfg, double load) {
  const double lam = cfg.lame_lambda(), mu = cfg.lame_mu();
  const double e3 = 0.5 * ((1.0 - load) * (1.0 - load) - 1.0);
  double a = 0.0;
  for (int it = 0; it < 100; ++it) {
    const double e1 = 0.5 * ((1.0 + a) * (1.0 + a) - 1.0);
    const double g = lam * (2.0 * e1 + e3) + 2.0 * mu * e1;
    const double dg = (2.0 * lam + 2.0 * mu) * (1.0 + a);
    const double step = g / dg;
    a -= step;
    if (std::abs(step) < 1e-17) break;
  }
  return a;
}

/// -integral <sigma, grad^T grad> with sigma = diag(0, 0, -E), the z-integral
/// done by Gauss quadrature on the physical field rather than by mode factors.
inline double destabilizing_integral(const ModeField& f, const ShellGrid& grid, int zpoints = 64) {
  const GradientField g = full_gradient(f, grid);
  const double L = grid.config().L, q = grid.wavenumber(f.m), E = grid.config().E;
  const GaussRule z = gauss_legendre(zpoints, 0.0, L);
  const Eigen::MatrixXd w = grid.weights(NormWeight::ExactJacobian);
  const Eigen::Matrix3d sigma = Eigen::Vector3d(0.0, 0.0, -E).asDiagonal();
  double total = 0.0;
  for (int k = 0; k < zpoints; ++k) {
    const double cz = std::cos(q * z.nodes(k)), sz = std::sin(q * z.nodes(k));
    for (int i = 0; i < grid.nt(); ++i)
      for (int j = 0; j < grid.ntheta(); ++j) {
        Eigen::Matrix3d G;
        for (int a = 0; a < 3; ++a)
          for (int b = 0; b < 3; ++b)
            G(a, b) = g(a, b)(i, j) * (GradientField::parity(a, b) == Parity::Cos ? cz : sz);
        total -= z.weights(k) * w(i, j) * (sigma.cwiseProduct(G.transpose() * G)).sum();
      }
  }
  return total;
}

/// Random sparse SPD pencil (A, B) with a banded pattern.
inline void random_pencil(int n, std::mt19937_64& rng, SparseMatrix& A, SparseMatrix& B) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto spd = [&](double shift) {
    std::vector<Eigen::Triplet<double>> trip;
    for (int i = 0; i < n; ++i)
      for (int d = 1; d <= 3 && i + d < n; ++d) {
        const double v = u(rng);
        trip.emplace_back(i, i + d, v);
        trip.emplace_back(i + d, i, v);
      }
    for (int i = 0; i < n; ++i) trip.emplace_back(i, i, shift + 6.0 + 2.0 * std::abs(u(rng)));
    SparseMatrix S(n, n);
    S.setFromTriplets(trip.begin(), trip.end());
    return S;
  };
  A = spd(0.0);
  B = spd(1.0);
}

/// Smallest root of det(A - lambda B) for a small SPD pencil, by bisection
/// on the inertia of A - lambda B (Sylvester's law through LDL^T).
inline double smallest_root_bisection(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
  auto negatives = [&](double lam) {
    const Eigen::LDLT<Eigen::MatrixXd> ldlt(A - lam * B);
    int count = 0;
    for (int i = 0; i < ldlt.vectorD().size(); ++i) count += ldlt.vectorD()(i) < 0.0;
    return count;
  };
  double lo = 0.0, hi = 1.0;
  while (negatives(hi) == 0) hi *= 2.0;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (negatives(mid) == 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace oracle
