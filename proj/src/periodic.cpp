#include "cylbuck/periodic.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "cylbuck/error.hpp"

namespace cylbuck {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

TrigSeries::TrigSeries(double period, std::vector<double> cos_coeffs,
                       std::vector<double> sin_coeffs)
    : period_(period), a_(std::move(cos_coeffs)), b_(std::move(sin_coeffs)) {
  if (!(period_ > 0.0)) throw Error(ErrorCode::InvalidProfile, "period must be positive");
  const std::size_t n = std::max(a_.size(), b_.size());
  a_.resize(std::max<std::size_t>(n, 1), 0.0);
  b_.resize(a_.size(), 0.0);
  b_[0] = 0.0;
}

TrigSeries TrigSeries::from_samples(const Eigen::VectorXd& samples, double period,
                                    double drop_tol) {
  const int n = static_cast<int>(samples.size());
  if (n < 2) throw Error(ErrorCode::InvalidProfile, "need at least two samples");
  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> in(n), out;
  for (int j = 0; j < n; ++j) in[j] = samples(j);
  fft.fwd(out, in);

  const int half = n / 2;
  std::vector<double> a(half + 1, 0.0), b(half + 1, 0.0);
  a[0] = out[0].real() / n;
  for (int k = 1; k <= half; ++k) {
    if (2 * k == n) {
      a[k] = out[k].real() / n;
    } else {
      a[k] = 2.0 * out[k].real() / n;
      b[k] = -2.0 * out[k].imag() / n;
    }
  }
  double biggest = 0.0;
  for (int k = 0; k <= half; ++k) biggest = std::max({biggest, std::abs(a[k]), std::abs(b[k])});
  int keep = half;
  while (keep > 0 && std::abs(a[keep]) <= drop_tol * biggest && std::abs(b[keep]) <= drop_tol * biggest)
    --keep;
  a.resize(keep + 1);
  b.resize(keep + 1);
  return TrigSeries(period, std::move(a), std::move(b));
}

double TrigSeries::derivative(double x, int order) const {
  return jet(x, order)[static_cast<std::size_t>(order)];
}

std::vector<double> TrigSeries::jet(double x, int max_order) const {
  std::vector<double> out(static_cast<std::size_t>(max_order) + 1, 0.0);
  out[0] = a_[0];
  const double w = kTwoPi / period_;
  const std::complex<double> step = std::polar(1.0, w * x);
  std::complex<double> e = 1.0;
  for (std::size_t n = 1; n < a_.size(); ++n) {
    e *= step;
    if ((n & 31u) == 0) e = std::polar(1.0, w * static_cast<double>(n) * x);
    const double c = e.real();
    const double s = e.imag();
    const double wn = w * static_cast<double>(n);
    double scale = 1.0;
    for (int d = 0; d <= max_order; ++d) {
      double cd = 0.0, sd = 0.0;  // d-th derivatives of cos, sin at wn x (unscaled)
      switch (d & 3) {
        case 0: cd = c; sd = s; break;
        case 1: cd = -s; sd = c; break;
        case 2: cd = -c; sd = -s; break;
        default: cd = s; sd = -c; break;
      }
      out[static_cast<std::size_t>(d)] += scale * (a_[n] * cd + b_[n] * sd);
      scale *= wn;
    }
  }
  return out;
}

Eigen::VectorXd TrigSeries::sample(int n, int order) const {
  Eigen::VectorXd v(n);
  for (int j = 0; j < n; ++j) v(j) = derivative(period_ * j / n, order);
  return v;
}

TrigSeries TrigSeries::periodic_antiderivative() const {
  const double w = kTwoPi / period_;
  std::vector<double> a(a_.size(), 0.0), b(a_.size(), 0.0);
  double constant = 0.0;
  for (std::size_t n = 1; n < a_.size(); ++n) {
    const double wn = w * static_cast<double>(n);
    b[n] = a_[n] / wn;
    a[n] = -b_[n] / wn;
    constant -= a[n];
  }
  a[0] = constant;
  return TrigSeries(period_, std::move(a), std::move(b));
}

TrigSeries TrigSeries::scaled(double factor) const {
  std::vector<double> a = a_, b = b_;
  for (auto& v : a) v *= factor;
  for (auto& v : b) v *= factor;
  return TrigSeries(period_, std::move(a), std::move(b));
}

std::string_view to_string(ThetaScheme scheme) noexcept {
  switch (scheme) {
    case ThetaScheme::Spectral: return "spectral";
    case ThetaScheme::FD2: return "fd2";
    case ThetaScheme::FD4: return "fd4";
    case ThetaScheme::FD6: return "fd6";
    case ThetaScheme::FD8: return "fd8";
  }
  return "unknown";
}

ThetaScheme theta_scheme_from_string(std::string_view name) {
  for (auto s : {ThetaScheme::Spectral, ThetaScheme::FD2, ThetaScheme::FD4, ThetaScheme::FD6,
                 ThetaScheme::FD8})
    if (to_string(s) == name) return s;
  throw Error(ErrorCode::InvalidConfig,
              "unknown theta scheme '" + std::string(name) + "' (spectral, fd2, fd4, fd6, fd8)");
}

namespace {

std::vector<double> central_weights(ThetaScheme scheme) {
  switch (scheme) {
    case ThetaScheme::FD2: return {1.0 / 2.0};
    case ThetaScheme::FD4: return {2.0 / 3.0, -1.0 / 12.0};
    case ThetaScheme::FD6: return {3.0 / 4.0, -3.0 / 20.0, 1.0 / 60.0};
    case ThetaScheme::FD8: return {4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0};
    case ThetaScheme::Spectral: break;
  }
  return {};
}

}  // namespace

int stencil_radius(ThetaScheme scheme, int n) {
  if (scheme == ThetaScheme::Spectral) return n / 2;
  return static_cast<int>(central_weights(scheme).size());
}

Eigen::SparseMatrix<double> periodic_derivative(int n, double period, ThetaScheme scheme) {
  if (n < 4) throw Error(ErrorCode::DimensionMismatch, "periodic grid needs at least 4 points");
  std::vector<Eigen::Triplet<double>> trip;
  const double dx = period / n;
  if (scheme == ThetaScheme::Spectral) {
    trip.reserve(static_cast<std::size_t>(n) * n);
    const double scale = std::numbers::pi / period;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        const int k = i - j;
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        double v = 0.0;
        if (n % 2 == 0)
          v = scale * sign / std::tan(std::numbers::pi * k / n);
        else
          v = scale * sign / std::sin(std::numbers::pi * k / n);
        trip.emplace_back(i, j, v);
      }
  } else {
    const auto w = central_weights(scheme);
    const int r = static_cast<int>(w.size());
    if (2 * r >= n) throw Error(ErrorCode::DimensionMismatch, "grid too coarse for stencil");
    trip.reserve(static_cast<std::size_t>(n) * 2 * r);
    for (int i = 0; i < n; ++i)
      for (int s = 1; s <= r; ++s) {
        trip.emplace_back(i, (i + s) % n, w[s - 1] / dx);
        trip.emplace_back(i, (i - s + n) % n, -w[s - 1] / dx);
      }
  }
  Eigen::SparseMatrix<double> d(n, n);
  d.setFromTriplets(trip.begin(), trip.end());
  return d;
}

Eigen::VectorXd periodic_grid(int n, double period) {
  Eigen::VectorXd g(n);
  for (int j = 0; j < n; ++j) g(j) = period * j / n;
  return g;
}

}  // namespace cylbuck
