#include "cylbuck/shell_fields.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "cylbuck/error.hpp"
#include "cylbuck/quadrature.hpp"

namespace cylbuck {

void ShellConfig::validate(double k_max) const {
  auto fail = [](const std::string& msg) { throw Error(ErrorCode::InvalidConfig, msg); };
  if (!(h > 0.0)) fail("thickness h must be positive");
  if (!(L > 0.0)) fail("height L must be positive");
  if (!(E > 0.0)) fail("Young's modulus E must be positive");
  if (!(nu > 0.0 && nu < 0.5)) fail("Poisson ratio nu must lie in (0, 1/2)");
  if (k_max > 0.0 && !(h * k_max < 1.0)) {
    std::ostringstream msg;
    msg << "thickness h=" << h << " too large for k_max=" << k_max << " (need h < 1/k_max)";
    fail(msg.str());
  }
}

std::string_view to_string(Space s) noexcept { return s == Space::Vh ? "vh" : "vh-theta"; }

Space space_from_string(std::string_view name) {
  if (name == "vh") return Space::Vh;
  if (name == "vh-theta") return Space::VhTheta;
  throw Error(ErrorCode::InvalidConfig, "unknown space '" + std::string(name) + "' (vh, vh-theta)");
}

ShellGrid::ShellGrid(const CrossSection& cs, const ShellConfig& cfg, const Discretization& disc)
    : cfg_(cfg), disc_(disc), period_(cs.period) {
  cfg.validate();
  if (disc.nt < 1 || disc.ntheta < 8)
    throw Error(ErrorCode::DimensionMismatch, "discretization needs nt >= 1 and ntheta >= 8");
  const GaussRule rule = gauss_legendre(disc.nt, -0.5 * cfg.h, 0.5 * cfg.h);
  t_ = rule.nodes;
  wt_ = rule.weights;
  dt_ = lagrange_differentiation(t_);
  theta_ = periodic_grid(disc.ntheta, period_);
  k_ = cs.size() == disc.ntheta ? cs.curvature : cs.profile().resampled(disc.ntheta).samples;
  jac_ = Eigen::MatrixXd::Ones(nt(), ntheta()) + t_ * k_.transpose();
  if (jac_.minCoeff() <= 0.0) {
    std::ostringstream msg;
    msg << "1 + t k = " << jac_.minCoeff() << " <= 0 (h=" << cfg.h << ", k_max=" << k_.maxCoeff()
        << ")";
    throw Error(ErrorCode::SingularJacobian, msg.str());
  }
  dtheta_ = periodic_derivative(disc.ntheta, period_, disc.scheme);
}

Eigen::MatrixXd ShellGrid::weights(NormWeight weight) const {
  Eigen::MatrixXd w = wt_ * Eigen::RowVectorXd::Constant(ntheta(), theta_weight());
  if (weight == NormWeight::ExactJacobian) w = w.cwiseProduct(jac_);
  return w;
}

double ShellGrid::wavenumber(int m) const { return std::numbers::pi * m / cfg_.L; }

double z_factor(int m, Parity parity, double L) {
  if (m > 0) return 0.5 * L;
  return parity == Parity::Cos ? L : 0.0;
}

ModeField ModeField::zero(const ShellGrid& grid, int m, Space space) {
  ModeField f;
  f.m = m;
  f.space = space;
  f.phi_t = Eigen::MatrixXd::Zero(grid.nt(), grid.ntheta());
  f.phi_theta = f.phi_t;
  f.phi_z = f.phi_t;
  return f;
}

const Eigen::MatrixXd& ModeField::component(int c) const {
  return c == 0 ? phi_t : (c == 1 ? phi_theta : phi_z);
}

Eigen::MatrixXd& ModeField::component(int c) {
  return c == 0 ? phi_t : (c == 1 ? phi_theta : phi_z);
}

void ModeField::check_admissible() const {
  if (m < 0) throw Error(ErrorCode::InvalidConfig, "negative wavenumber");
  if (m == 0 && space == Space::Vh)
    throw Error(ErrorCode::InvalidConfig, "m = 0 is not admissible in V_h");
  if (m == 0 && space == Space::VhTheta && phi_theta.cwiseAbs().maxCoeff() > 0.0)
    throw Error(ErrorCode::InvalidConfig, "phi_theta must vanish for m = 0 in V_h^theta");
}

namespace {

Eigen::MatrixXd d_theta(const Eigen::MatrixXd& f, const ShellGrid& grid) {
  return f * grid.dtheta().transpose();
}

GradientField gradient(const ModeField& f, const ShellGrid& grid, bool simplified) {
  const int nt = grid.nt(), ntheta = grid.ntheta();
  if (f.phi_t.rows() != nt || f.phi_t.cols() != ntheta || f.phi_theta.rows() != nt ||
      f.phi_theta.cols() != ntheta || f.phi_z.rows() != nt || f.phi_z.cols() != ntheta)
    throw Error(ErrorCode::DimensionMismatch, "mode field does not conform to the grid");
  const double q = grid.wavenumber(f.m);
  const Eigen::RowVectorXd k = grid.curvature().transpose();
  const Eigen::MatrixXd kmat = Eigen::VectorXd::Ones(nt) * k;
  const Eigen::MatrixXd inv_j = simplified ? Eigen::MatrixXd::Ones(nt, ntheta)
                                           : Eigen::MatrixXd(grid.jacobian().cwiseInverse());
  const auto& a = f.phi_t;
  const auto& b = f.phi_theta;
  const auto& c = f.phi_z;

  GradientField g;
  g.m = f.m;
  g.kind = simplified ? GradientField::Kind::Simplified : GradientField::Kind::Full;
  g(0, 0) = grid.dt() * a;
  g(0, 1) = (d_theta(a, grid) - kmat.cwiseProduct(b)).cwiseProduct(inv_j);
  g(0, 2) = -q * a;
  g(1, 0) = grid.dt() * b;
  g(1, 1) = (d_theta(b, grid) + kmat.cwiseProduct(a)).cwiseProduct(inv_j);
  g(1, 2) = -q * b;
  g(2, 0) = grid.dt() * c;
  g(2, 1) = d_theta(c, grid).cwiseProduct(inv_j);
  g(2, 2) = q * c;
  return g;
}

}  // namespace

GradientField full_gradient(const ModeField& f, const ShellGrid& grid) {
  return gradient(f, grid, false);
}

GradientField simplified_gradient(const ModeField& f, const ShellGrid& grid) {
  return gradient(f, grid, true);
}

GradientField symmetric_part(const GradientField& g) {
  GradientField s = g;
  s.symmetric = true;
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b) {
      s(a, b) = 0.5 * (g(a, b) + g(b, a));
      s(b, a) = s(a, b);
    }
  return s;
}

GradientField difference(const GradientField& a, const GradientField& b) {
  GradientField d = a;
  for (int i = 0; i < 9; ++i) d.entries[i] = a.entries[i] - b.entries[i];
  d.symmetric = a.symmetric && b.symmetric;
  return d;
}

double entry_norm_sq(const GradientField& g, int a, int b, const ShellGrid& grid,
                     NormWeight weight) {
  const double zf = z_factor(g.m, GradientField::parity(a, b), grid.config().L);
  if (zf == 0.0) return 0.0;
  return zf * grid.weights(weight).cwiseProduct(g(a, b).cwiseAbs2()).sum();
}

double weighted_norm_sq(const GradientField& g, const ShellGrid& grid, NormWeight weight) {
  const Eigen::MatrixXd w = grid.weights(weight);
  double total = 0.0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      const double zf = z_factor(g.m, GradientField::parity(a, b), grid.config().L);
      if (zf != 0.0) total += zf * w.cwiseProduct(g(a, b).cwiseAbs2()).sum();
    }
  return total;
}

double weighted_norm_sq(const ModeField& f, const ShellGrid& grid, NormWeight weight) {
  const Eigen::MatrixXd w = grid.weights(weight);
  double total = 0.0;
  for (int c = 0; c < 3; ++c) {
    const double zf = z_factor(f.m, ModeField::parity(c), grid.config().L);
    if (zf != 0.0) total += zf * w.cwiseProduct(f.component(c).cwiseAbs2()).sum();
  }
  return total;
}

double col3_norm_sq(const GradientField& g, const ShellGrid& grid, NormWeight weight) {
  double total = 0.0;
  for (int a = 0; a < 3; ++a) total += entry_norm_sq(g, a, 2, grid, weight);
  return total;
}

void write_mode_csv(const ModeField& f, const ShellGrid& grid, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot open " + path.string());
  out << "t,theta,phi_t,phi_theta,phi_z\n" << std::setprecision(17);
  for (int j = 0; j < grid.ntheta(); ++j)
    for (int i = 0; i < grid.nt(); ++i)
      out << grid.t()(i) << ',' << grid.theta()(j) << ',' << f.phi_t(i, j) << ','
          << f.phi_theta(i, j) << ',' << f.phi_z(i, j) << '\n';
}

}  // namespace cylbuck
