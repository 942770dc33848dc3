#include "cylbuck/forms.hpp"

#include <cmath>
#include <sstream>

#include "cylbuck/error.hpp"

namespace cylbuck {

Eigen::Matrix3d apply_L0(const IsotropicTensor& T, const Eigen::Matrix3d& e) {
  const double asym = (e - e.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * std::max(1.0, e.cwiseAbs().maxCoeff()))
    throw Error(ErrorCode::NonSymmetricInput, "strain is not symmetric");
  return T.lambda_L * e.trace() * Eigen::Matrix3d::Identity() + 2.0 * T.mu * e;
}

Eigen::Matrix3d trivial_stress(const ShellConfig& cfg) {
  return Eigen::Vector3d(0.0, 0.0, -cfg.E).asDiagonal();
}

TrivialBranch solve_trivial_branch(const ShellConfig& cfg, double load) {
  if (!(std::abs(load) <= 0.1)) {
    std::ostringstream msg;
    msg << "load " << load << " outside the small-load regime |load| <= 0.1";
    throw Error(ErrorCode::InvalidConfig, msg.str());
  }
  const double e3 = 0.5 * ((1.0 - load) * (1.0 - load) - 1.0);
  const double e1 = -cfg.nu * e3;
  if (1.0 + 2.0 * e1 <= 0.0) throw Error(ErrorCode::LoadTooLarge, "lateral stretch collapses");
  // sqrt(1 + 2 e1) - 1 without cancellation
  return {load, 2.0 * e1 / (std::sqrt(1.0 + 2.0 * e1) + 1.0)};
}

double energy_form(const GradientField& e, const ShellGrid& grid, NormWeight weight) {
  const IsotropicTensor T = IsotropicTensor::from(grid.config());
  const Eigen::MatrixXd w = grid.weights(weight);
  const double L = grid.config().L;
  const Eigen::MatrixXd trace = e(0, 0) + e(1, 1) + e(2, 2);
  double total = T.lambda_L * z_factor(e.m, Parity::Cos, L) * w.cwiseProduct(trace.cwiseAbs2()).sum();
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      const double zf = z_factor(e.m, GradientField::parity(a, b), L);
      if (zf != 0.0) total += 2.0 * T.mu * zf * w.cwiseProduct(e(a, b).cwiseAbs2()).sum();
    }
  return total;
}

namespace {

void check_denominator(double denom, const ModeField& f, const ShellGrid& grid) {
  const double scale = weighted_norm_sq(f, grid);
  if (!(denom >= 1e-14 * scale) || denom == 0.0)
    throw Error(ErrorCode::ZeroDenominator, "field is not destabilizing (col3 of the gradient vanishes)");
}

}  // namespace

double rayleigh_cl(const ModeField& f, const ShellGrid& grid) {
  const GradientField g = full_gradient(f, grid);
  const double denom = grid.config().E * col3_norm_sq(g, grid);
  check_denominator(denom, f, grid);
  return energy_form(symmetric_part(g), grid) / denom;
}

std::string_view to_string(KornDenominator d) noexcept { return d == KornDenominator::Grad ? "grad" : "col3"; }

double korn_quotient(const ModeField& f, const ShellGrid& grid, KornDenominator denom) {
  const GradientField g = full_gradient(f, grid);
  const double d = denom == KornDenominator::Grad ? weighted_norm_sq(g, grid) : col3_norm_sq(g, grid);
  check_denominator(d, f, grid);
  return weighted_norm_sq(symmetric_part(g), grid) / d;
}

}  // namespace cylbuck
