#include "cylbuck/scaling.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <future>
#include <iomanip>
#include <limits>
#include <sstream>

#include "cylbuck/error.hpp"

namespace cylbuck {

std::vector<SweepPoint> SweepResult::successful() const {
  std::vector<SweepPoint> out;
  for (const auto& p : points)
    if (p.ok) out.push_back(p);
  return out;
}

std::size_t SweepResult::failures() const {
  return static_cast<std::size_t>(std::count_if(points.begin(), points.end(), [](const auto& p) { return !p.ok; }));
}

std::vector<double> normalize_h_list(std::vector<double> hs) {
  if (hs.empty()) throw Error(ErrorCode::InvalidConfig, "empty h list");
  for (double h : hs)
    if (!(h > 0.0) || !std::isfinite(h)) throw Error(ErrorCode::InvalidConfig, "h values must be positive");
  std::sort(hs.begin(), hs.end(), std::greater<>());
  if (std::adjacent_find(hs.begin(), hs.end()) != hs.end())
    throw Error(ErrorCode::InvalidConfig, "h values must be distinct");
  return hs;
}

std::vector<double> default_h_grid() { return {0.04, 0.02, 0.01, 0.005, 0.0025}; }

namespace {

SweepPoint guarded(const PointEvaluator& eval, double h) {
  try {
    SweepPoint p = eval(h);
    p.h = h;
    if (!(p.value > 0.0) || !std::isfinite(p.value)) {
      std::ostringstream msg;
      msg << "non-positive value " << p.value;
      p.ok = false;
      p.error = msg.str();
    } else {
      p.ok = true;
    }
    return p;
  } catch (const Error& e) {
    SweepPoint p;
    p.h = h;
    p.error = e.what();
    return p;
  }
}

}  // namespace

SweepResult sweep_points(const std::string& geometry, const std::string& quantity, std::vector<double> hs,
                         const PointEvaluator& eval, int jobs) {
  hs = normalize_h_list(std::move(hs));
  SweepResult out{geometry, quantity, {}};
  out.points.resize(hs.size());
  const std::size_t width = static_cast<std::size_t>(std::max(1, jobs));
  for (std::size_t start = 0; start < hs.size(); start += width) {
    const std::size_t stop = std::min(hs.size(), start + width);
    if (stop - start == 1) {
      out.points[start] = guarded(eval, hs[start]);
      continue;
    }
    std::vector<std::future<SweepPoint>> fut;
    for (std::size_t i = start; i < stop; ++i) fut.push_back(std::async(std::launch::async, guarded, std::cref(eval), hs[i]));
    for (std::size_t i = start; i < stop; ++i) out.points[i] = fut[i - start].get();
  }
  return out;
}

SweepResult run_sweep(const std::string& geometry, const std::string& quantity, std::vector<double> hs,
                      const PointEvaluator& eval, int jobs) {
  SweepResult s = sweep_points(geometry, quantity, std::move(hs), eval, jobs);
  if (s.successful().empty()) {
    std::string msg = "every point of the " + quantity + " sweep failed";
    if (!s.points.empty()) msg += " (first: " + s.points.front().error + ")";
    throw Error(ErrorCode::AllPointsFailed, msg);
  }
  return s;
}

ExponentFit fit_exponent(const std::vector<double>& h, const std::vector<double>& value) {
  if (h.size() != value.size()) throw Error(ErrorCode::DimensionMismatch, "h and value lengths differ");
  if (h.size() < 3) throw Error(ErrorCode::TooFewPoints, "an exponent fit needs at least 3 points");
  const std::size_t n = h.size();
  std::vector<double> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(h[i] > 0.0) || !(value[i] > 0.0)) throw Error(ErrorCode::InvalidConfig, "fit data must be positive");
    x[i] = std::log(h[i]);
    y[i] = std::log(value[i]);
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw Error(ErrorCode::TooFewPoints, "h values must not all coincide");
  ExponentFit f;
  f.alpha = sxy / sxx;
  f.intercept = my - f.alpha * mx;
  f.h = h;
  f.value = value;
  double ssr = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - (f.intercept + f.alpha * x[i]);
    f.residuals.push_back(r);
    ssr += r * r;
  }
  f.r2 = syy > 0.0 ? std::clamp(1.0 - ssr / syy, 0.0, 1.0) : 1.0;
  return f;
}

ExponentFit fit_exponent(const SweepResult& s) {
  std::vector<double> h, v;
  for (const auto& p : s.successful()) {
    h.push_back(p.h);
    v.push_back(p.value);
  }
  return fit_exponent(h, v);
}

std::vector<ExponentFit> leave_one_out(const ExponentFit& fit) {
  std::vector<ExponentFit> out;
  for (std::size_t skip = 0; skip < fit.h.size(); ++skip) {
    std::vector<double> h, v;
    for (std::size_t i = 0; i < fit.h.size(); ++i)
      if (i != skip) {
        h.push_back(fit.h[i]);
        v.push_back(fit.value[i]);
      }
    out.push_back(fit_exponent(h, v));
  }
  return out;
}

BracketVerdict bracket_check(const ExponentFit& fit, double lo, double hi, double slack) {
  BracketVerdict v;
  v.lo = std::min(lo, hi);
  v.hi = std::max(lo, hi);
  v.slack = slack;
  v.alpha = fit.alpha;
  v.pass = fit.alpha >= v.lo - slack && fit.alpha <= v.hi + slack;
  v.c1 = std::numeric_limits<double>::infinity();
  v.c2 = 0.0;
  for (std::size_t i = 0; i < fit.h.size(); ++i) {
    v.c1 = std::min(v.c1, fit.value[i] / std::pow(fit.h[i], v.hi));
    v.c2 = std::max(v.c2, fit.value[i] / std::pow(fit.h[i], v.lo));
  }
  return v;
}

void write_sweep_csv(const SweepResult& s, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot open " + path.string());
  auto num = [](double x) {
    char buf[32];
    return std::string(buf, std::to_chars(buf, buf + sizeof buf, x).ptr);
  };
  out << "h,value,m_star,residual\n";
  for (const auto& p : s.successful())
    out << num(p.h) << ',' << num(p.value) << ',' << p.m_star << ',' << num(p.residual) << '\n';
}

void write_fit_json(const ExponentFit& fit, const BracketVerdict& v, const std::filesystem::path& path) {
  nlohmann::ordered_json j;
  j["alpha"] = fit.alpha;
  j["intercept"] = fit.intercept;
  j["r2"] = fit.r2;
  j["c1"] = v.c1;
  j["c2"] = v.c2;
  j["verdict"] = v.pass ? "pass" : "fail";
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot open " + path.string());
  out << j.dump(2) << '\n';
}

}  // namespace cylbuck
