#pragma once

#include <Eigen/Dense>

namespace cylbuck {

/// Gauss-Legendre rule mapped to an interval.
struct GaussRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};

/// n-point Gauss-Legendre rule on [a, b]. Nodes ascending.
GaussRule gauss_legendre(int n, double a = -1.0, double b = 1.0);

/// Differentiation matrix of the Lagrange interpolant through `nodes`:
/// (D f)_i = p'(x_i) where p interpolates f. Exact for polynomials of
/// degree < nodes.size().
Eigen::MatrixXd lagrange_differentiation(const Eigen::VectorXd& nodes);

/// Values at `x` of the Lagrange basis through `nodes` (row vector such
/// that row * f = p(x)).
Eigen::RowVectorXd lagrange_row(const Eigen::VectorXd& nodes, double x);

}  // namespace cylbuck
