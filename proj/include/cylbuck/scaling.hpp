#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace cylbuck {

struct SweepPoint {
  double h = 0.0;
  double value = 0.0;
  int m_star = -1;  // -1 when not a mode scan
  double residual = 0.0;
  bool ok = false;
  std::string error;
  std::vector<std::pair<int, double>> mode_curve;  // per-mode minima of a scan
  bool hit_cap = false;
  std::string note;
};

/// Points are kept in strictly decreasing h; failed points stay in the list
/// with ok = false.
struct SweepResult {
  std::string geometry;
  std::string quantity;
  std::vector<SweepPoint> points;

  std::vector<SweepPoint> successful() const;
  std::size_t failures() const;
};

using PointEvaluator = std::function<SweepPoint(double h)>;

/// Sorts and validates the h list (positive, distinct); throws InvalidConfig.
std::vector<double> normalize_h_list(std::vector<double> hs);

/// Evaluates every h (concurrently with `jobs` > 1); errors of type
/// cylbuck::Error are recorded per point. Never throws for point failures.
SweepResult sweep_points(const std::string& geometry, const std::string& quantity, std::vector<double> hs,
                         const PointEvaluator& eval, int jobs = 1);
/// sweep_points, then AllPointsFailed when nothing succeeded.
SweepResult run_sweep(const std::string& geometry, const std::string& quantity, std::vector<double> hs,
                      const PointEvaluator& eval, int jobs = 1);

std::vector<double> default_h_grid();

struct ExponentFit {
  double alpha = 0.0;
  double intercept = 0.0;  // log of the prefactor
  double r2 = 0.0;
  std::vector<double> residuals;  // log value - fitted, per point
  std::vector<double> h, value;
};

/// Least squares of log value against log h. Throws TooFewPoints below 3
/// points and InvalidConfig on non-positive data.
ExponentFit fit_exponent(const std::vector<double>& h, const std::vector<double>& value);
ExponentFit fit_exponent(const SweepResult& s);

/// Fits with each point removed in turn.
std::vector<ExponentFit> leave_one_out(const ExponentFit& fit);

struct BracketVerdict {
  bool pass = false;
  double alpha = 0.0;
  double lo = 0.0, hi = 0.0, slack = 0.0;
  /// min value / h^hi and max value / h^lo
  double c1 = 0.0, c2 = 0.0;
};

/// pass iff lo - slack <= alpha <= hi + slack (lo, hi given in either order).
BracketVerdict bracket_check(const ExponentFit& fit, double lo, double hi, double slack);

void write_sweep_csv(const SweepResult& s, const std::filesystem::path& path);
/// JSON with keys alpha, intercept, r2, c1, c2, verdict.
void write_fit_json(const ExponentFit& fit, const BracketVerdict& v, const std::filesystem::path& path);

}  // namespace cylbuck
