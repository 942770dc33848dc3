#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <array>
#include <filesystem>
#include <span>
#include <string_view>

#include "cylbuck/geometry.hpp"
#include "cylbuck/periodic.hpp"

namespace cylbuck {

/// Shell thickness, height and isotropic material.
struct ShellConfig {
  double h = 0.01;
  double L = 1.0;
  double E = 1.0;
  double nu = 0.3;

  double lame_lambda() const { return E * nu / ((1.0 + nu) * (1.0 - 2.0 * nu)); }
  double lame_mu() const { return E / (2.0 * (1.0 + nu)); }
  /// Throws InvalidConfig on out-of-range values; with k_max > 0 also
  /// requires h < 1 / k_max so the wall stays inside the focal surface.
  void validate(double k_max = 0.0) const;
};

/// Admissible variation space. V_h clamps every component at z = 0, L;
/// V_h^theta clamps phi_z and asks phi_theta to have zero z-mean.
enum class Space { Vh, VhTheta };
std::string_view to_string(Space s) noexcept;
Space space_from_string(std::string_view name);

enum class NormWeight { ExactJacobian, Flat };

struct Discretization {
  int nt = 8;
  int ntheta = 512;
  ThetaScheme scheme = ThetaScheme::FD8;
};

/// Tensor grid over (t, theta) with everything the per-mode operators need.
/// t-nodes are Gauss-Legendre points of [-h/2, h/2].
class ShellGrid {
 public:
  /// Resamples the curvature when cs.size() != disc.ntheta. Throws
  /// SingularJacobian if 1 + t k <= 0 at a node.
  ShellGrid(const CrossSection& cs, const ShellConfig& cfg, const Discretization& disc);

  int nt() const noexcept { return static_cast<int>(t_.size()); }
  int ntheta() const noexcept { return static_cast<int>(theta_.size()); }
  const ShellConfig& config() const noexcept { return cfg_; }
  const Discretization& discretization() const noexcept { return disc_; }
  double period() const noexcept { return period_; }

  const Eigen::VectorXd& t() const noexcept { return t_; }
  const Eigen::VectorXd& t_weights() const noexcept { return wt_; }
  const Eigen::VectorXd& theta() const noexcept { return theta_; }
  double theta_weight() const noexcept { return period_ / ntheta(); }
  const Eigen::VectorXd& curvature() const noexcept { return k_; }
  /// 1 + t_i k_j
  const Eigen::MatrixXd& jacobian() const noexcept { return jac_; }
  const Eigen::MatrixXd& dt() const noexcept { return dt_; }
  const Eigen::SparseMatrix<double>& dtheta() const noexcept { return dtheta_; }

  /// Quadrature weights w_t w_theta (times the Jacobian when exact).
  Eigen::MatrixXd weights(NormWeight weight) const;
  /// Axial wavenumber pi m / L.
  double wavenumber(int m) const;

 private:
  ShellConfig cfg_;
  Discretization disc_;
  double period_ = 0.0;
  Eigen::VectorXd t_, wt_, theta_, k_;
  Eigen::MatrixXd jac_, dt_;
  Eigen::SparseMatrix<double> dtheta_;
};

enum class Parity { Cos, Sin };

/// z-integral of cos^2 / sin^2 (pi m z / L) over [0, L].
double z_factor(int m, Parity parity, double L);

/// One axial Fourier mode of a displacement: phi_t, phi_theta carry
/// cos(pi m z / L), phi_z carries sin(pi m z / L). Grids are nt x ntheta.
struct ModeField {
  int m = 1;
  Space space = Space::VhTheta;
  Eigen::MatrixXd phi_t, phi_theta, phi_z;

  static ModeField zero(const ShellGrid& grid, int m, Space space);
  static Parity parity(int component) { return component == 2 ? Parity::Sin : Parity::Cos; }
  const Eigen::MatrixXd& component(int c) const;
  Eigen::MatrixXd& component(int c);
  /// Throws InvalidConfig when the mode violates the space constraints
  /// (m = 0 in V_h; nonzero phi_theta for m = 0 in V_h^theta).
  void check_admissible() const;
};

/// Amplitudes of the nine gradient entries for one mode, index (a, b) =
/// component a differentiated in direction b, order (t, theta, z).
struct GradientField {
  enum class Kind { Full, Simplified };
  int m = 1;
  Kind kind = Kind::Full;
  bool symmetric = false;
  std::array<Eigen::MatrixXd, 9> entries;

  const Eigen::MatrixXd& operator()(int a, int b) const { return entries[3 * a + b]; }
  Eigen::MatrixXd& operator()(int a, int b) { return entries[3 * a + b]; }
  /// Entries (t,z), (theta,z), (z,t), (z,theta) carry sin, the rest cos.
  static Parity parity(int a, int b) {
    return ((a == 2) != (b == 2)) ? Parity::Sin : Parity::Cos;
  }
};

/// The gradient in the local frame, theta-derivatives by the grid's scheme,
/// t-derivatives by the Gauss differentiation matrix, z analytically.
GradientField full_gradient(const ModeField& f, const ShellGrid& grid);
/// Same with t = 0 in the second-column denominators.
GradientField simplified_gradient(const ModeField& f, const ShellGrid& grid);
GradientField symmetric_part(const GradientField& g);
GradientField difference(const GradientField& a, const GradientField& b);

double weighted_norm_sq(const GradientField& g, const ShellGrid& grid,
                        NormWeight weight = NormWeight::ExactJacobian);
double weighted_norm_sq(const ModeField& f, const ShellGrid& grid,
                        NormWeight weight = NormWeight::ExactJacobian);
/// Norm of the third column (the z-derivatives).
double col3_norm_sq(const GradientField& g, const ShellGrid& grid,
                    NormWeight weight = NormWeight::ExactJacobian);
/// Norm of a single entry.
double entry_norm_sq(const GradientField& g, int a, int b, const ShellGrid& grid,
                     NormWeight weight = NormWeight::ExactJacobian);

/// Debug CSV `t,theta,phi_t,phi_theta,phi_z`.
void write_mode_csv(const ModeField& f, const ShellGrid& grid, const std::filesystem::path& path);

}  // namespace cylbuck
