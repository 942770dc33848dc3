#pragma once

#include <Eigen/Dense>

#include "cylbuck/shell_fields.hpp"

namespace cylbuck {

/// Isotropic linear elasticity tensor L0 e = lambda_L tr(e) I + 2 mu e.
struct IsotropicTensor {
  double lambda_L = 0.0;
  double mu = 0.0;

  static IsotropicTensor from(const ShellConfig& cfg) { return {cfg.lame_lambda(), cfg.lame_mu()}; }
};

/// Throws NonSymmetricInput unless e is symmetric to 1e-12 relative.
Eigen::Matrix3d apply_L0(const IsotropicTensor& T, const Eigen::Matrix3d& e);

/// Stress of the trivial branch at first order in the load, (t, theta, z)
/// order: diag(0, 0, -E).
Eigen::Matrix3d trivial_stress(const ShellConfig& cfg);

/// Homogeneous compressed state y = ((1 + a) x1, (1 + a) x2, (1 - load) x3)
/// of a Saint Venant-Kirchhoff material with traction-free lateral faces.
struct TrivialBranch {
  double load = 0.0;
  double stretch = 0.0;  // a(load)

  Eigen::Matrix3d deformation_gradient() const {
    return Eigen::Vector3d(1.0 + stretch, 1.0 + stretch, 1.0 - load).asDiagonal();
  }
};

/// Solves the lateral equilibrium equation for a(load). Loads outside
/// [-0.1, 0.1] are rejected with InvalidConfig (negative loads are accepted
/// so that symmetric difference quotients at 0 can be formed).
TrivialBranch solve_trivial_branch(const ShellConfig& cfg, double load);

/// Integral of <L0 e, e> over the shell for a symmetric gradient.
double energy_form(const GradientField& e, const ShellGrid& grid,
                   NormWeight weight = NormWeight::ExactJacobian);

/// Energy over E ||col3(grad phi)||^2. Throws ZeroDenominator when the
/// field is not destabilizing.
double rayleigh_cl(const ModeField& f, const ShellGrid& grid);

enum class KornDenominator { Grad, Col3 };
std::string_view to_string(KornDenominator d) noexcept;

/// ||e(phi)||^2 over ||grad phi||^2 or ||col3(grad phi)||^2.
double korn_quotient(const ModeField& f, const ShellGrid& grid, KornDenominator denom);

}  // namespace cylbuck
