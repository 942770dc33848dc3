#include "cylbuck/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>

#include "cylbuck/error.hpp"

namespace cylbuck {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Integral from 0 to theta_j of periodic samples f (mean included).
Eigen::VectorXd cumulative_integral(const Eigen::VectorXd& f, double period) {
  const TrigSeries series = TrigSeries::from_samples(f, period);
  const TrigSeries anti = series.periodic_antiderivative();
  const int n = static_cast<int>(f.size());
  Eigen::VectorXd out = anti.sample(n);
  for (int j = 0; j < n; ++j) out(j) += series.mean() * period * j / n;
  return out;
}

Eigen::Vector2d closure_of_angle(const Eigen::VectorXd& psi, double period) {
  const double w = period / static_cast<double>(psi.size());
  return {w * psi.array().cos().sum(), w * psi.array().sin().sum()};
}

Eigen::VectorXd tangent_angle(const Eigen::VectorXd& k, double period) {
  return cumulative_integral(k, period);
}

}  // namespace

double CurvatureProfile::total_turning() const { return samples.sum() * period / size(); }

void CurvatureProfile::validate() const {
  if (!(period > 0.0)) throw Error(ErrorCode::InvalidProfile, "period must be positive");
  if (size() < 8) throw Error(ErrorCode::InvalidProfile, "profile needs at least 8 samples");
  if (!samples.allFinite()) throw Error(ErrorCode::InvalidProfile, "non-finite curvature sample");
  const double kmin = samples.minCoeff();
  if (kmin < 0.0) {
    std::ostringstream msg;
    msg << "curvature sample " << kmin << " < 0";
    throw Error(ErrorCode::NegativeCurvature, msg.str());
  }
  const double turning = total_turning();
  if (std::abs(turning - kTwoPi) > 1e-10) {
    std::ostringstream msg;
    msg << std::setprecision(17) << "total turning " << turning << " != 2 pi";
    throw Error(ErrorCode::InvalidProfile, msg.str());
  }
}

CurvatureProfile CurvatureProfile::resampled(int n) const {
  if (n == size()) return *this;
  CurvatureProfile out = *this;
  out.samples = TrigSeries::from_samples(samples, period).sample(n);
  // Truncation at the new Nyquist frequency can leave tiny negative values
  // at exact zeros; those are clamped, then total turning restored.
  out.samples = out.samples.cwiseMax(0.0);
  out.samples *= kTwoPi / out.total_turning();
  return out;
}

CurvatureProfile circle_profile(double period, int n) {
  CurvatureProfile p;
  p.period = period;
  p.samples = Eigen::VectorXd::Constant(n, kTwoPi / period);
  p.kind = ProfileKind::Constant;
  p.description = "circle";
  return p;
}

CurvatureProfile trig_profile(double period, int n, const std::vector<double>& cos_coeffs,
                              const std::vector<double>& sin_coeffs) {
  CurvatureProfile p;
  p.period = period;
  p.kind = ProfileKind::TrigSeries;
  p.description = "trig";
  const Eigen::VectorXd x = periodic_grid(n, period);
  p.samples = Eigen::VectorXd::Ones(n);
  for (std::size_t j = 0; j < cos_coeffs.size(); ++j)
    p.samples.array() += cos_coeffs[j] * (kTwoPi * (j + 1) / period * x.array()).cos();
  for (std::size_t j = 0; j < sin_coeffs.size(); ++j)
    p.samples.array() += sin_coeffs[j] * (kTwoPi * (j + 1) / period * x.array()).sin();
  p.samples *= kTwoPi / period;
  return p;
}

CurvatureProfile oval_profile(double period, int n, double amplitude) {
  CurvatureProfile p = trig_profile(period, n, {0.0, amplitude}, {});
  p.description = "oval";
  return p;
}

CurvatureProfile flat_spot_profile(double period, int n, int zeros, int order) {
  if (zeros < 1) throw Error(ErrorCode::InvalidProfile, "flat-spot builder needs zeros >= 1");
  if (order < 2 || order % 2 != 0)
    throw Error(ErrorCode::InvalidProfile, "flat-spot zero order must be even and >= 2");
  CurvatureProfile p;
  p.period = period;
  p.kind = ProfileKind::FlatSpot;
  p.description = "flat-spot";
  const Eigen::VectorXd x = periodic_grid(n, period);
  const Eigen::ArrayXd base = 1.0 - (kTwoPi * zeros / period * x.array()).cos();
  p.samples = base.pow(order / 2).matrix();
  // Exact mean of (1 - cos)^q is binom(2q, q) / 2^q.
  const int q = order / 2;
  double mean = 1.0;
  for (int j = 1; j <= q; ++j) mean *= static_cast<double>(q + j) / j;
  mean /= std::pow(2.0, q);
  p.samples *= kTwoPi / (period * mean);
  return p;
}

double ClosureCorrection::magnitude() const { return std::hypot(b_cos, b_sin); }

TrigSeries CrossSection::curvature_series() const {
  return TrigSeries::from_samples(curvature, period);
}

CurvatureProfile CrossSection::profile() const {
  CurvatureProfile p;
  p.period = period;
  p.samples = curvature;
  p.kind = kind;
  p.description = description;
  return p;
}

Eigen::Vector2d closure_vector(const CurvatureProfile& profile) {
  return closure_of_angle(tangent_angle(profile.samples, profile.period), profile.period);
}

CrossSection synthesize_curve(const CurvatureProfile& profile, const SynthesisOptions& options) {
  profile.validate();
  const double p = profile.period;
  const int n = profile.size();
  const double tol = options.tolerance > 0.0 ? options.tolerance : 1e-9 * p;

  const Eigen::VectorXd& k0 = profile.samples;
  const Eigen::VectorXd psi0 = tangent_angle(k0, p);
  const Eigen::ArrayXd cos0 = psi0.array().cos();
  const Eigen::ArrayXd sin0 = psi0.array().sin();

  auto corrected = [&](const Eigen::Vector2d& b, double* scale) {
    Eigen::VectorXd k = (k0.array() * (b(0) * cos0 + b(1) * sin0).exp()).matrix();
    const double s = kTwoPi / (k.sum() * p / n);
    if (scale != nullptr) *scale = s;
    return Eigen::VectorXd(k * s);
  };
  auto defect = [&](const Eigen::Vector2d& b) {
    return closure_of_angle(tangent_angle(corrected(b, nullptr), p), p);
  };

  ClosureCorrection corr;
  Eigen::Vector2d b = Eigen::Vector2d::Zero();
  Eigen::Vector2d f = defect(b);
  while (f.norm() >= tol) {
    if (corr.iterations >= options.max_iterations) {
      std::ostringstream msg;
      msg << "closure defect " << f.norm() << " after " << corr.iterations << " Newton steps";
      throw Error(ErrorCode::NonClosable, msg.str());
    }
    Eigen::Matrix2d jac;
    constexpr double step = 1e-6;
    for (int i = 0; i < 2; ++i) {
      Eigen::Vector2d bp = b, bm = b;
      bp(i) += step;
      bm(i) -= step;
      jac.col(i) = (defect(bp) - defect(bm)) / (2.0 * step);
    }
    const Eigen::Vector2d delta = jac.fullPivLu().solve(f);
    if (!delta.allFinite()) throw Error(ErrorCode::NonClosable, "singular closure Jacobian");
    b -= delta;
    f = defect(b);
    ++corr.iterations;
  }

  CrossSection cs;
  cs.period = p;
  cs.kind = profile.kind;
  cs.description = profile.description;
  cs.theta = profile.grid();
  cs.curvature = corr.iterations > 0 ? corrected(b, &corr.scale) : k0;
  if (cs.curvature.minCoeff() < 0.0)
    throw Error(ErrorCode::NegativeCurvature, "closure correction produced negative curvature");
  corr.b_cos = b(0);
  corr.b_sin = b(1);
  corr.relative_change = (cs.curvature - k0).cwiseAbs().maxCoeff() / k0.cwiseAbs().maxCoeff();
  cs.correction = corr;

  cs.tangent_angle = tangent_angle(cs.curvature, p);
  const Eigen::VectorXd c = cs.tangent_angle.array().cos();
  const Eigen::VectorXd s = cs.tangent_angle.array().sin();
  cs.tangent.resize(n, 2);
  cs.tangent << c, s;
  cs.normal.resize(n, 2);
  cs.normal << s, -c;
  cs.position.resize(n, 2);
  cs.position << cumulative_integral(c, p), cumulative_integral(s, p);
  cs.closure = closure_residual(cs);
  return cs;
}

double closure_residual(const CrossSection& cs) {
  return closure_of_angle(cs.tangent_angle, cs.period).norm();
}

CurvatureExtrema curvature_extrema(const CrossSection& cs, double zero_threshold) {
  CurvatureExtrema ex;
  const Eigen::VectorXd& k = cs.curvature;
  const int n = cs.size();
  ex.k_min = k.minCoeff();
  ex.k_max = k.maxCoeff();
  const double dx = cs.period / n;

  // Group below-threshold samples into periodic runs; refine each run's
  // minimum with a parabola through its neighbours.
  std::vector<char> below(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) below[j] = k(j) < zero_threshold;
  int start = 0;
  while (start < n && below[start]) ++start;
  if (start == n) return ex;  // everything below threshold: no isolated zeros
  // `start` is above threshold, so every run begins strictly after it.
  for (int step = 1; step < n; ++step) {
    const int j = (start + step) % n;
    if (!below[j]) continue;
    int best = j;
    int len = 0;
    while (step + len < n && below[(j + len) % n]) {
      if (k((j + len) % n) < k(best)) best = (j + len) % n;
      ++len;
    }
    const double km = k((best - 1 + n) % n), k0 = k(best), kp = k((best + 1) % n);
    const double denom = km - 2.0 * k0 + kp;
    double shift = denom > 0.0 ? 0.5 * (km - kp) / denom : 0.0;
    shift = std::clamp(shift, -0.5, 0.5);
    double z = cs.theta(best) + shift * dx;
    if (z < 0.0) z += cs.period;
    if (z >= cs.period) z -= cs.period;
    ex.zeros.push_back(z);
    step += len;
  }
  std::sort(ex.zeros.begin(), ex.zeros.end());
  return ex;
}

double quadratic_zero_constant(const CrossSection& cs, double theta0, double radius) {
  const int n = cs.size();
  double c = std::numeric_limits<double>::infinity();
  for (int j = 0; j < n; ++j) {
    double s = std::remainder(cs.theta(j) - theta0, cs.period);
    if (std::abs(s) > radius || std::abs(s) < 1e-12) continue;
    const double s2 = s * s;
    const double k = cs.curvature(j);
    if (k <= 0.0) return 0.0;
    c = std::min({c, k / s2, s2 / k});
  }
  return c;
}

void write_curve_csv(const CrossSection& cs, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot open " + path.string());
  out << "theta,x,y,k\n" << std::setprecision(17);
  for (int j = 0; j < cs.size(); ++j)
    out << cs.theta(j) << ',' << cs.position(j, 0) << ',' << cs.position(j, 1) << ','
        << cs.curvature(j) << '\n';
}

CurvatureProfile read_curve_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::string line;
  std::getline(in, line);
  if (line.rfind("theta,x,y,k", 0) != 0)
    throw Error(ErrorCode::InvalidProfile, path.string() + ":1: expected header theta,x,y,k");
  std::vector<double> theta, k;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream row(line);
    double v[4];
    char comma = 0;
    if (!(row >> v[0] >> comma >> v[1] >> comma >> v[2] >> comma >> v[3]))
      throw Error(ErrorCode::InvalidProfile,
                  path.string() + ":" + std::to_string(lineno) + ": malformed row");
    theta.push_back(v[0]);
    k.push_back(v[3]);
  }
  if (theta.size() < 8) throw Error(ErrorCode::InvalidProfile, "curve CSV needs >= 8 rows");
  CurvatureProfile p;
  p.samples = Eigen::Map<Eigen::VectorXd>(k.data(), static_cast<Eigen::Index>(k.size()));
  p.period = (theta[1] - theta[0]) * static_cast<double>(theta.size());
  p.kind = ProfileKind::Samples;
  p.description = "csv:" + path.filename().string();
  // Undo decimal round-off in the total turning.
  p.samples *= kTwoPi / p.total_turning();
  return p;
}

}  // namespace cylbuck
