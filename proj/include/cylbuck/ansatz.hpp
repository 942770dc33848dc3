#pragma once

#include <Eigen/Dense>
#include <array>
#include <string_view>

#include "cylbuck/geometry.hpp"
#include "cylbuck/periodic.hpp"
#include "cylbuck/shell_fields.hpp"

namespace cylbuck {

/// B(s) = (1 - s^2)^4 on [-1, 1], zero outside.
double bump(double s, int order = 0);

enum class AnsatzFamily { Kirchhoff, Localized, LinearizedT };
std::string_view to_string(AnsatzFamily f) noexcept;
AnsatzFamily ansatz_family_from_string(std::string_view name);

/// Closed-form test field. Every family has the shape
///   phi_t = u,  phi_theta = -t u_theta + v,  phi_z = -t u_z + w
/// with u = U(theta) Z(z), v = V(theta) Z(z), w = Wt(theta) Z'(z); the
/// Kirchhoff-type families have V = Wt = 0.
class AnsatzField {
 public:
  struct ThetaPart {
    std::array<double, 3> U{};   // U, U', U''
    std::array<double, 2> V{};   // V, V'
    std::array<double, 2> Wt{};  // Wt, Wt'
    double k = 0.0;
  };
  struct Sample {
    Eigen::Vector3d phi;   // (t, theta, z) components
    Eigen::Matrix3d dphi;  // dphi(c, d): component c, partial in direction d
    double k = 0.0;
  };

  AnsatzFamily family() const noexcept { return family_; }
  double h() const noexcept { return h_; }
  double delta() const noexcept { return delta_; }
  double order() const noexcept { return order_; }
  double theta_center() const noexcept { return theta_c_; }
  double theta_halfwidth() const noexcept { return theta_w_; }
  double z_center() const noexcept { return z_c_; }
  double z_halfwidth() const noexcept { return z_w_; }
  double height() const noexcept { return L_; }
  double period() const noexcept { return k_.period(); }

  ThetaPart theta_part(double theta) const;
  /// Z, Z', Z''
  std::array<double, 3> z_part(double z) const;
  Sample evaluate(double t, double theta, double z) const;
  /// Full gradient in the local frame at a point.
  Eigen::Matrix3d gradient(double t, double theta, double z) const;

 private:
  friend AnsatzField kirchhoff_ansatz(const CrossSection&, const ShellConfig&, double);
  friend AnsatzField localized_ansatz(const CrossSection&, const ShellConfig&, double, int, bool);
  friend AnsatzField linearized_t_ansatz(const CrossSection&, const ShellConfig&, double, double, bool);

  AnsatzFamily family_ = AnsatzFamily::Kirchhoff;
  double h_ = 0.0, delta_ = 0.0, order_ = 0.0;
  double theta_c_ = 0.0, theta_w_ = 0.0, z_c_ = 0.0, z_w_ = 0.0, L_ = 1.0;
  TrigSeries k_;
  bool at_zero_ = false;  // k'^2/k through k = s^2 g(s)
};

/// phi_t = W((theta - c)/sqrt h, (z - L/2)/sqrt h) with the Kirchhoff
/// tangential components. Throws SupportOverflow when the support does not fit.
AnsatzField kirchhoff_ansatz(const CrossSection& cs, const ShellConfig& cfg, double theta_center);

/// Same shape on the scale delta = h^(1/(beta + 2)) around a curvature zero
/// of order beta. With `strict`, throws NotAZero when k(theta1) is not zero.
AnsatzField localized_ansatz(const CrossSection& cs, const ShellConfig& cfg, double theta1, int beta,
                             bool strict = true);

/// Linearization in t around a quadratic zero, delta = h^exponent in theta
/// and the full height in z. Throws NotAZero (strict) or RegularityViolation.
AnsatzField linearized_t_ansatz(const CrossSection& cs, const ShellConfig& cfg, double theta1,
                                double exponent = 1.0 / 6.0, bool strict = true);

/// Newton refinement of a curvature zero (k' = 0) starting near theta0.
double refine_zero(const TrigSeries& k, double theta0);

struct AnsatzQuadrature {
  int base_panels = 4;      // 8-point Gauss panels per support direction
  int max_level = 4;
  double tolerance = 1e-4;  // relative change between two levels
};

struct AnsatzQuotients {
  double korn_grad = 0.0;
  double korn_col3 = 0.0;
  double rayleigh_cl = 0.0;
  double sym_sq = 0.0;
  double grad_sq = 0.0;
  double col3_sq = 0.0;
  double energy = 0.0;
  double mass_sq = 0.0;
  int level = 0;
};

/// Quotients by composite Gauss quadrature over the support, refined until
/// two levels agree. Throws QuadratureNotConverged or ZeroDenominator.
AnsatzQuotients evaluate_ansatz_quotients(const AnsatzField& a, const ShellConfig& cfg,
                                          const AnsatzQuadrature& quad = {});

/// Coefficient of mode m (cos for phi_t, phi_theta; sin for phi_z) on the
/// grid nodes, by composite Gauss quadrature in z.
ModeField project_to_mode(const AnsatzField& a, const ShellGrid& grid, int m, Space space = Space::Vh);

}  // namespace cylbuck
