#include "cylbuck/ansatz.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "cylbuck/error.hpp"
#include "cylbuck/forms.hpp"
#include "cylbuck/quadrature.hpp"

namespace cylbuck {

double bump(double s, int order) {
  if (std::abs(s) >= 1.0) return 0.0;
  // (1 - s^2)^4 = 1 - 4 s^2 + 6 s^4 - 4 s^6 + s^8
  static constexpr std::array<double, 9> c{1, 0, -4, 0, 6, 0, -4, 0, 1};
  double value = 0.0;
  for (int p = 8; p >= order; --p) {
    double coeff = c[p];
    for (int d = 0; d < order; ++d) coeff *= p - d;
    value = value * s + coeff;
  }
  return value;
}

std::string_view to_string(AnsatzFamily f) noexcept {
  switch (f) {
    case AnsatzFamily::Kirchhoff: return "kirchhoff";
    case AnsatzFamily::Localized: return "localized";
    case AnsatzFamily::LinearizedT: return "linearized-t";
  }
  return "unknown";
}

AnsatzFamily ansatz_family_from_string(std::string_view name) {
  for (auto f : {AnsatzFamily::Kirchhoff, AnsatzFamily::Localized, AnsatzFamily::LinearizedT})
    if (to_string(f) == name) return f;
  throw Error(ErrorCode::InvalidConfig,
              "unknown ansatz family '" + std::string(name) + "' (kirchhoff, localized, linearized-t)");
}

namespace {

constexpr int kJet = 5;
using Jet = std::array<double, kJet>;

Jet mul(const Jet& a, const Jet& b) {
  Jet out{};
  for (int n = 0; n < kJet; ++n) {
    double binom = 1.0;
    for (int j = 0; j <= n; ++j) {
      out[n] += binom * a[j] * b[n - j];
      binom = binom * (n - j) / (j + 1);
    }
  }
  return out;
}

Jet shift(const Jet& a, int by) {
  Jet out{};
  for (int n = 0; n + by < kJet; ++n) out[n] = a[n + by];
  return out;
}

Jet axpy(double s, const Jet& a, const Jet& b) {
  Jet out;
  for (int n = 0; n < kJet; ++n) out[n] = s * a[n] + b[n];
  return out;
}

double wrap(double s, double period) { return s - period * std::round(s / period); }

bool is_zero_of(const TrigSeries& k, double theta) {
  double kmax = 0.0;
  for (int j = 0; j < 256; ++j) kmax = std::max(kmax, k(k.period() * j / 256.0));
  return k(theta) <= 1e-8 * kmax;
}

void check_finite(const Jet& a, const char* what) {
  for (double v : a)
    if (!std::isfinite(v))
      throw Error(ErrorCode::RegularityViolation, std::string("non-finite derivative of ") + what);
}

}  // namespace

double refine_zero(const TrigSeries& k, double theta0) {
  double theta = theta0;
  for (int it = 0; it < 30; ++it) {
    const auto j = k.jet(theta, 2);
    if (!(j[2] > 0.0)) break;
    const double step = j[1] / j[2];
    theta -= step;
    if (std::abs(step) < 1e-15) break;
  }
  return theta;
}

AnsatzField::ThetaPart AnsatzField::theta_part(double theta) const {
  ThetaPart out;
  const double s = wrap(theta - theta_c_, period());
  const auto kj = k_.jet(theta, 4);
  out.k = kj[0];
  const double x = s / delta_;
  Jet A{};
  double scale = 1.0;
  for (int j = 0; j < kJet; ++j) {
    A[j] = bump(x, j) * scale;
    scale /= delta_;
  }
  if (family_ != AnsatzFamily::LinearizedT) {
    for (int j = 0; j < 3; ++j) out.U[j] = A[j];
    return out;
  }
  if (std::abs(x) >= 1.0) return out;

  Jet K{};
  for (int j = 0; j < kJet; ++j) K[j] = kj[j];
  check_finite(K, "the curvature");

  // r = k'^2 / k as a jet of order 2
  Jet R{};
  if (at_zero_) {
    // k = s^2 g(s), g^(j)(s) = int_0^1 (1 - tau) tau^j k^(2+j)(theta1 + tau s) dtau
    static const GaussRule rule = gauss_legendre(24, 0.0, 1.0);
    Jet g{};
    for (int q = 0; q < rule.nodes.size(); ++q) {
      const double tau = rule.nodes(q);
      const auto d = k_.jet(theta_c_ + tau * s, 5);
      double tp = 1.0;
      for (int j = 0; j < 4; ++j) {
        g[j] += rule.weights(q) * (1.0 - tau) * tp * d[2 + j];
        tp *= tau;
      }
    }
    if (!(g[0] > 0.0)) throw Error(ErrorCode::RegularityViolation, "curvature zero is not quadratic");
    const Jet P{2.0 * g[0] + s * g[1], 3.0 * g[1] + s * g[2], 4.0 * g[2] + s * g[3], 0.0, 0.0};
    const Jet N = mul(P, P);
    R[0] = N[0] / g[0];
    R[1] = (N[1] - R[0] * g[1]) / g[0];
    R[2] = (N[2] - 2.0 * R[1] * g[1] - R[0] * g[2]) / g[0];
  } else {
    const double k0 = K[0], k1 = K[1], k2 = K[2], k3 = K[3];
    R[0] = k1 * k1 / k0;
    R[1] = 2.0 * k1 * k2 / k0 - k1 * k1 * k1 / (k0 * k0);
    R[2] = 2.0 * k2 * k2 / k0 + 2.0 * k1 * k3 / k0 - 5.0 * k1 * k1 * k2 / (k0 * k0) +
           2.0 * k1 * k1 * k1 * k1 / (k0 * k0 * k0);
  }
  check_finite(R, "k'^2/k");

  // u = -2 r W - 2 k'' W - 4 k' W' - k W''
  Jet U = mul(R, A);
  U = axpy(1.0, mul(shift(K, 2), A), U);
  for (auto& v : U) v *= -2.0;
  U = axpy(-4.0, mul(shift(K, 1), shift(A, 1)), U);
  U = axpy(-1.0, mul(K, shift(A, 2)), U);
  // v = 2 k k' W + k^2 W',  w-part = -k^2 W
  const Jet KK = mul(K, K);
  Jet V = mul(mul(K, shift(K, 1)), A);
  for (auto& v : V) v *= 2.0;
  V = axpy(1.0, mul(KK, shift(A, 1)), V);
  const Jet Wt = mul(KK, A);
  for (int j = 0; j < 3; ++j) out.U[j] = U[j];
  for (int j = 0; j < 2; ++j) {
    out.V[j] = V[j];
    out.Wt[j] = -Wt[j];
  }
  return out;
}

std::array<double, 3> AnsatzField::z_part(double z) const {
  const double y = (z - z_c_) / z_w_;
  return {bump(y, 0), bump(y, 1) / z_w_, bump(y, 2) / (z_w_ * z_w_)};
}

AnsatzField::Sample AnsatzField::evaluate(double t, double theta, double z) const {
  const ThetaPart T = theta_part(theta);
  const auto Z = z_part(z);
  const double u = T.U[0] * Z[0], ut = T.U[1] * Z[0], uz = T.U[0] * Z[1];
  const double utt = T.U[2] * Z[0], utz = T.U[1] * Z[1], uzz = T.U[0] * Z[2];
  const double v = T.V[0] * Z[0], vt = T.V[1] * Z[0], vz = T.V[0] * Z[1];
  const double w = T.Wt[0] * Z[1], wt = T.Wt[1] * Z[1], wz = T.Wt[0] * Z[2];
  Sample s;
  s.k = T.k;
  s.phi << u, -t * ut + v, -t * uz + w;
  s.dphi << 0.0, ut, uz,                       //
      -ut, -t * utt + vt, -t * utz + vz,       //
      -uz, -t * utz + wt, -t * uzz + wz;
  return s;
}

namespace {

Eigen::Matrix3d local_gradient(const AnsatzField::Sample& s, double t) {
  const double J = 1.0 + t * s.k;
  Eigen::Matrix3d G = s.dphi;
  G(0, 1) = (s.dphi(0, 1) - s.k * s.phi(1)) / J;
  G(1, 1) = (s.dphi(1, 1) + s.k * s.phi(0)) / J;
  G(2, 1) = s.dphi(2, 1) / J;
  return G;
}

void validate_support(const AnsatzField& a) {
  if (2.0 * a.theta_halfwidth() >= a.period() || a.z_center() - a.z_halfwidth() < -1e-12 ||
      a.z_center() + a.z_halfwidth() > a.height() + 1e-12) {
    std::ostringstream msg;
    msg << to_string(a.family()) << " support (theta half-width " << a.theta_halfwidth()
        << ", z half-width " << a.z_halfwidth() << ") does not fit in (0," << a.period() << ") x (0,"
        << a.height() << ")";
    throw Error(ErrorCode::SupportOverflow, msg.str());
  }
}

}  // namespace

Eigen::Matrix3d AnsatzField::gradient(double t, double theta, double z) const {
  return local_gradient(evaluate(t, theta, z), t);
}

AnsatzField kirchhoff_ansatz(const CrossSection& cs, const ShellConfig& cfg, double theta_center) {
  cfg.validate();
  AnsatzField a;
  a.family_ = AnsatzFamily::Kirchhoff;
  a.h_ = cfg.h;
  a.delta_ = std::sqrt(cfg.h);
  a.order_ = 0.0;
  a.theta_c_ = theta_center;
  a.theta_w_ = a.delta_;
  a.z_c_ = 0.5 * cfg.L;
  a.z_w_ = a.delta_;
  a.L_ = cfg.L;
  a.k_ = cs.curvature_series();
  validate_support(a);
  return a;
}

AnsatzField localized_ansatz(const CrossSection& cs, const ShellConfig& cfg, double theta1, int beta,
                             bool strict) {
  cfg.validate();
  if (beta < 2) throw Error(ErrorCode::InvalidConfig, "zero order beta must be at least 2");
  AnsatzField a;
  a.family_ = AnsatzFamily::Localized;
  a.k_ = cs.curvature_series();
  const bool zero = is_zero_of(a.k_, theta1);
  if (strict && !zero) {
    std::ostringstream msg;
    msg << "curvature at theta=" << theta1 << " is " << a.k_(theta1) << ", not a zero";
    throw Error(ErrorCode::NotAZero, msg.str());
  }
  a.h_ = cfg.h;
  a.order_ = beta;
  a.delta_ = std::pow(cfg.h, 1.0 / (beta + 2.0));
  a.theta_c_ = zero ? refine_zero(a.k_, theta1) : theta1;
  a.theta_w_ = a.delta_;
  a.z_c_ = 0.5 * cfg.L;
  a.z_w_ = a.delta_;
  a.L_ = cfg.L;
  validate_support(a);
  return a;
}

AnsatzField linearized_t_ansatz(const CrossSection& cs, const ShellConfig& cfg, double theta1,
                                double exponent, bool strict) {
  cfg.validate();
  if (!(exponent > 0.0)) throw Error(ErrorCode::InvalidConfig, "delta exponent must be positive");
  AnsatzField a;
  a.family_ = AnsatzFamily::LinearizedT;
  a.k_ = cs.curvature_series();
  const bool zero = is_zero_of(a.k_, theta1);
  if (strict && !zero) {
    std::ostringstream msg;
    msg << "curvature at theta=" << theta1 << " is " << a.k_(theta1) << ", not a zero";
    throw Error(ErrorCode::NotAZero, msg.str());
  }
  a.at_zero_ = zero;
  a.h_ = cfg.h;
  a.order_ = exponent;
  a.delta_ = std::pow(cfg.h, exponent);
  a.theta_c_ = zero ? refine_zero(a.k_, theta1) : theta1;
  a.theta_w_ = a.delta_;
  a.z_c_ = 0.5 * cfg.L;
  a.z_w_ = 0.5 * cfg.L;
  a.L_ = cfg.L;
  validate_support(a);
  // probe the support once so that regularity problems surface here
  for (int j = 0; j <= 16; ++j) a.theta_part(a.theta_c_ + a.theta_w_ * (j / 8.0 - 1.0));
  return a;
}

namespace {

GaussRule composite(double a, double b, int panels) {
  static const GaussRule base = gauss_legendre(8);
  GaussRule out;
  out.nodes.resize(8 * panels);
  out.weights.resize(8 * panels);
  const double w = (b - a) / panels;
  for (int p = 0; p < panels; ++p)
    for (int q = 0; q < 8; ++q) {
      out.nodes(8 * p + q) = a + w * (p + 0.5 * (base.nodes(q) + 1.0));
      out.weights(8 * p + q) = 0.5 * w * base.weights(q);
    }
  return out;
}

AnsatzQuotients integrate(const AnsatzField& a, const ShellConfig& cfg, int panels, int nt) {
  const GaussRule th = composite(a.theta_center() - a.theta_halfwidth(),
                                 a.theta_center() + a.theta_halfwidth(), panels);
  const GaussRule zr = composite(a.z_center() - a.z_halfwidth(), a.z_center() + a.z_halfwidth(), panels);
  const GaussRule tr = gauss_legendre(nt, -0.5 * cfg.h, 0.5 * cfg.h);
  const IsotropicTensor T = IsotropicTensor::from(cfg);

  std::vector<std::array<double, 3>> Z(zr.nodes.size());
  for (Eigen::Index q = 0; q < zr.nodes.size(); ++q) Z[q] = a.z_part(zr.nodes(q));

  AnsatzQuotients out;
  for (Eigen::Index p = 0; p < th.nodes.size(); ++p) {
    const AnsatzField::ThetaPart P = a.theta_part(th.nodes(p));
    for (Eigen::Index q = 0; q < zr.nodes.size(); ++q) {
      const auto& z = Z[q];
      const double u = P.U[0] * z[0], ut = P.U[1] * z[0], uz = P.U[0] * z[1];
      const double utt = P.U[2] * z[0], utz = P.U[1] * z[1], uzz = P.U[0] * z[2];
      const double v = P.V[0] * z[0], vt = P.V[1] * z[0], vz = P.V[0] * z[1];
      const double w = P.Wt[0] * z[1], wt = P.Wt[1] * z[1], wz = P.Wt[0] * z[2];
      for (Eigen::Index i = 0; i < tr.nodes.size(); ++i) {
        const double t = tr.nodes(i);
        AnsatzField::Sample s;
        s.k = P.k;
        s.phi << u, -t * ut + v, -t * uz + w;
        s.dphi << 0.0, ut, uz, -ut, -t * utt + vt, -t * utz + vz, -uz, -t * utz + wt, -t * uzz + wz;
        const Eigen::Matrix3d G = local_gradient(s, t);
        const Eigen::Matrix3d e = 0.5 * (G + G.transpose());
        const double weight = th.weights(p) * zr.weights(q) * tr.weights(i) * (1.0 + t * P.k);
        const double e2 = e.squaredNorm();
        out.sym_sq += weight * e2;
        out.grad_sq += weight * G.squaredNorm();
        out.col3_sq += weight * G.col(2).squaredNorm();
        out.energy += weight * (T.lambda_L * e.trace() * e.trace() + 2.0 * T.mu * e2);
        out.mass_sq += weight * s.phi.squaredNorm();
      }
    }
  }
  return out;
}

}  // namespace

AnsatzQuotients evaluate_ansatz_quotients(const AnsatzField& a, const ShellConfig& cfg,
                                          const AnsatzQuadrature& quad) {
  auto finish = [&](AnsatzQuotients r) {
    if (!(r.col3_sq > 1e-14 * r.mass_sq) || r.grad_sq <= 0.0)
      throw Error(ErrorCode::ZeroDenominator, "ansatz field has no z-derivative content");
    r.korn_grad = r.sym_sq / r.grad_sq;
    r.korn_col3 = r.sym_sq / r.col3_sq;
    r.rayleigh_cl = r.energy / (cfg.E * r.col3_sq);
    return r;
  };
  AnsatzQuotients prev = finish(integrate(a, cfg, quad.base_panels, 4));
  for (int level = 1; level <= quad.max_level; ++level) {
    AnsatzQuotients cur = finish(integrate(a, cfg, quad.base_panels << level, 4 + 2 * level));
    cur.level = level;
    const double change = std::max({std::abs(cur.korn_grad - prev.korn_grad) / cur.korn_grad,
                                    std::abs(cur.korn_col3 - prev.korn_col3) / cur.korn_col3,
                                    std::abs(cur.rayleigh_cl - prev.rayleigh_cl) / cur.rayleigh_cl});
    if (change <= quad.tolerance) return cur;
    prev = cur;
  }
  std::ostringstream msg;
  msg << "ansatz quotients did not settle to " << quad.tolerance << " within " << quad.max_level
      << " refinements";
  throw Error(ErrorCode::QuadratureNotConverged, msg.str());
}

ModeField project_to_mode(const AnsatzField& a, const ShellGrid& grid, int m, Space space) {
  ModeField f = ModeField::zero(grid, m, space);
  const double L = a.height();
  const double q = std::numbers::pi * m / L;
  const GaussRule zr = composite(a.z_center() - a.z_halfwidth(), a.z_center() + a.z_halfwidth(), 64);
  const double cos_norm = 1.0 / z_factor(m, Parity::Cos, L);
  const double sin_norm = m > 0 ? 1.0 / z_factor(m, Parity::Sin, L) : 0.0;
  for (int j = 0; j < grid.ntheta(); ++j) {
    const AnsatzField::ThetaPart P = a.theta_part(grid.theta()(j));
    // coefficients of the z-profiles Z and Z' against cos / sin
    double zc = 0.0, zpc = 0.0, zs = 0.0, zps = 0.0;
    for (Eigen::Index r = 0; r < zr.nodes.size(); ++r) {
      const auto Z = a.z_part(zr.nodes(r));
      const double c = std::cos(q * zr.nodes(r)), s = std::sin(q * zr.nodes(r));
      zc += zr.weights(r) * Z[0] * c;
      zpc += zr.weights(r) * Z[1] * c;
      zs += zr.weights(r) * Z[0] * s;
      zps += zr.weights(r) * Z[1] * s;
    }
    for (int i = 0; i < grid.nt(); ++i) {
      const double t = grid.t()(i);
      f.phi_t(i, j) = cos_norm * P.U[0] * zc;
      if (m > 0 || space == Space::Vh) f.phi_theta(i, j) = cos_norm * (-t * P.U[1] + P.V[0]) * zc;
      f.phi_z(i, j) = sin_norm * (-t * P.U[0] * zps + P.Wt[0] * zps);
    }
  }
  return f;
}

}  // namespace cylbuck
