#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <string>
#include <vector>

#include "cylbuck/periodic.hpp"

namespace cylbuck {

enum class ProfileKind { Constant, TrigSeries, FlatSpot, Samples };

/// Curvature of a closed convex curve sampled on the uniform arc-length
/// grid theta_j = j p / N.
struct CurvatureProfile {
  double period = 0.0;
  Eigen::VectorXd samples;
  ProfileKind kind = ProfileKind::Samples;
  std::string description;

  int size() const noexcept { return static_cast<int>(samples.size()); }
  Eigen::VectorXd grid() const { return periodic_grid(size(), period); }
  /// Periodic trapezoid rule for the integral of k over one period.
  double total_turning() const;
  /// Throws NegativeCurvature / InvalidProfile when an invariant fails.
  void validate() const;
  /// Trigonometric resampling onto n points.
  CurvatureProfile resampled(int n) const;
};

/// Builders. All return profiles with total turning 2 pi.
CurvatureProfile circle_profile(double period, int n);
/// k = (2 pi / p) (1 + sum_j a_j cos(2 pi j x / p) + b_j sin(2 pi j x / p)).
CurvatureProfile trig_profile(double period, int n, const std::vector<double>& cos_coeffs,
                              const std::vector<double>& sin_coeffs);
/// k = 1 + amplitude cos(2 theta) on p = 2 pi (rescaled for other p).
CurvatureProfile oval_profile(double period, int n, double amplitude);
/// k proportional to (1 - cos(2 pi zeros x / p))^(order/2): `zeros` curvature
/// zeros of the given even order, the first at x = 0.
CurvatureProfile flat_spot_profile(double period, int n, int zeros = 1, int order = 2);

struct ClosureCorrection {
  double b_cos = 0.0;
  double b_sin = 0.0;
  double scale = 1.0;
  int iterations = 0;
  /// max_j |k_j - k_j^input| / max_j k_j^input
  double relative_change = 0.0;
  double magnitude() const;
};

/// Arc-length parameterized closed convex curve with its moving frame.
/// Columns of the N x 2 arrays are (x, y).
struct CrossSection {
  double period = 0.0;
  Eigen::VectorXd theta;
  Eigen::MatrixX2d position;  // alpha(theta_j)
  Eigen::MatrixX2d tangent;   // e_theta = alpha'
  Eigen::MatrixX2d normal;    // e_t, outward: alpha'' = -k e_t
  Eigen::VectorXd curvature;
  Eigen::VectorXd tangent_angle;  // psi
  double closure = 0.0;
  ClosureCorrection correction;
  ProfileKind kind = ProfileKind::Samples;
  std::string description;

  int size() const noexcept { return static_cast<int>(theta.size()); }
  /// Spectral interpolant of the curvature samples.
  TrigSeries curvature_series() const;
  CurvatureProfile profile() const;
};

struct SynthesisOptions {
  /// Closure tolerance; <= 0 selects 1e-9 * period.
  double tolerance = 0.0;
  int max_iterations = 50;
};

/// Builds the curve with the given curvature. When the profile does not
/// close, k is reweighted as s k exp(b1 cos psi0 + b2 sin psi0) with (b1, b2)
/// found by Newton iteration; zeros and positivity of k are preserved and s
/// restores total turning 2 pi.
CrossSection synthesize_curve(const CurvatureProfile& profile, const SynthesisOptions& options = {});

/// Closure defect (int cos psi, int sin psi) of the profile as given.
Eigen::Vector2d closure_vector(const CurvatureProfile& profile);

/// |alpha(p) - alpha(0)| recomputed from the tangent angle.
double closure_residual(const CrossSection& cs);

struct CurvatureExtrema {
  double k_min = 0.0;
  double k_max = 0.0;
  std::vector<double> zeros;
};

CurvatureExtrema curvature_extrema(const CrossSection& cs, double zero_threshold = 1e-8);

/// Largest c with c s^2 <= k(theta0 + s) <= s^2 / c over grid samples with
/// |s| <= radius (periodic distance, the sample at s = 0 excluded).
double quadratic_zero_constant(const CrossSection& cs, double theta0, double radius);

/// CSV `theta,x,y,k`, one row per sample.
void write_curve_csv(const CrossSection& cs, const std::filesystem::path& path);
/// Reads the curvature column of a curve CSV; the period is N times the
/// theta spacing.
CurvatureProfile read_curve_csv(const std::filesystem::path& path);

}  // namespace cylbuck
