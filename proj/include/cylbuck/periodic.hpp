#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <string>
#include <string_view>
#include <vector>

namespace cylbuck {

/// Real trigonometric series on a period p:
///   f(x) = a_0 + sum_{n>=1} a_n cos(w n x) + b_n sin(w n x),  w = 2 pi / p.
class TrigSeries {
 public:
  TrigSeries() = default;
  TrigSeries(double period, std::vector<double> cos_coeffs, std::vector<double> sin_coeffs);

  /// Interpolant through equispaced samples x_j = j p / N. Coefficients
  /// below `drop_tol * max|coeff|` at the tail are truncated.
  static TrigSeries from_samples(const Eigen::VectorXd& samples, double period,
                                 double drop_tol = 1e-17);

  double period() const noexcept { return period_; }
  int degree() const noexcept { return static_cast<int>(a_.size()) - 1; }
  double mean() const noexcept { return a_.empty() ? 0.0 : a_[0]; }

  double operator()(double x) const { return derivative(x, 0); }
  double derivative(double x, int order) const;
  /// Derivatives of orders 0..max_order at x, in one pass.
  std::vector<double> jet(double x, int max_order) const;

  /// Samples on N equispaced points of the given derivative order.
  Eigen::VectorXd sample(int n, int order = 0) const;

  /// Antiderivative of (f - mean), vanishing at x = 0.
  TrigSeries periodic_antiderivative() const;

  TrigSeries scaled(double factor) const;

 private:
  double period_ = 1.0;
  std::vector<double> a_;
  std::vector<double> b_;
};

/// Discretization of d/dtheta on a uniform periodic grid.
enum class ThetaScheme { Spectral, FD2, FD4, FD6, FD8 };

std::string_view to_string(ThetaScheme scheme) noexcept;
ThetaScheme theta_scheme_from_string(std::string_view name);

/// Half-width of the stencil (N/2 for Spectral).
int stencil_radius(ThetaScheme scheme, int n);

/// Periodic first-derivative matrix on N points spanning one period p.
/// Spectral uses the trigonometric-interpolant derivative (Nyquist mode
/// differentiated to zero); FDk uses the central k-th order stencil.
Eigen::SparseMatrix<double> periodic_derivative(int n, double period, ThetaScheme scheme);

/// Equispaced grid j p / N.
Eigen::VectorXd periodic_grid(int n, double period);

}  // namespace cylbuck
