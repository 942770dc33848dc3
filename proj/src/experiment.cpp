#include "cylbuck/experiment.hpp"

#include <cmath>
#include <sstream>

#include "cylbuck/error.hpp"

namespace cylbuck {

CrossSection build_cross_section(const GeometrySpec& s) {
  CurvatureProfile profile;
  if (s.builder == "circle") {
    profile = circle_profile(s.period, s.samples);
  } else if (s.builder == "oval") {
    profile = oval_profile(s.period, s.samples, s.amplitude);
  } else if (s.builder == "trig") {
    profile = trig_profile(s.period, s.samples, s.cos_coeffs, s.sin_coeffs);
  } else if (s.builder == "flat-spot") {
    profile = flat_spot_profile(s.period, s.samples, s.zeros, s.order);
  } else if (s.builder == "csv") {
    profile = read_curve_csv(s.path);
  } else {
    throw Error(ErrorCode::InvalidConfig,
                "unknown profile '" + s.builder + "' (valid: circle, oval, trig, flat-spot, csv)");
  }
  profile.validate();
  return synthesize_curve(profile);
}

std::string geometry_id(const GeometrySpec& s) {
  std::ostringstream o;
  o << s.builder;
  if (s.builder == "oval") o << "-a" << s.amplitude;
  if (s.builder == "flat-spot") o << "-z" << s.zeros << "-o" << s.order;
  if (s.builder == "csv") o << ":" << s.path;
  return o.str();
}

bool has_curvature_zero(const CrossSection& cs) { return !curvature_extrema(cs).zeros.empty(); }

BracketSpec default_bracket(const CrossSection& cs, Quantity q) {
  if (!has_curvature_zero(cs)) {
    if (q == Quantity::KornGrad) return {1.5, 1.5, 0.1};
    return {1.0, 1.0, 0.1};
  }
  if (q == Quantity::KornGrad) return {5.0 / 3.0, 12.0 / 7.0, 0.12};
  if (q == Quantity::KornCol3) return {1.5, 1.6, 0.12};
  return {1.5, 1.6, 0.1};
}

PointEvaluator eigen_evaluator(const CrossSection& cs, const ExperimentConfig& cfg, Quantity q, int jobs,
                               const std::filesystem::path& dump_dir) {
  return [cs, cfg, q, jobs, dump_dir](double h) {
    const ShellGrid grid(cs, cfg.shell(h), cfg.discretization());
    ScanOptions opt = cfg.scan_options();
    opt.jobs = jobs;
    if (!dump_dir.empty()) {
      std::ostringstream name;
      name << to_string(q) << "_h" << h << ".bin";
      opt.dump_path = dump_dir / name.str();
    }
    const ScanResult r = scan_modes(grid, cfg.space, q, opt);
    SweepPoint p;
    p.h = h;
    p.value = r.value;
    p.m_star = r.m_star;
    p.residual = r.best.residual;
    p.hit_cap = r.hit_cap;
    p.note = r.dump_note;
    for (const auto& mv : r.curve) p.mode_curve.emplace_back(mv.m, mv.value);
    return p;
  };
}

Quantity matching_quantity(const std::string& a) {
  if (a == "korn_grad") return Quantity::KornGrad;
  if (a == "korn_col3") return Quantity::KornCol3;
  return Quantity::LambdaCl;
}

ResolvedAnsatz resolve_ansatz(const AnsatzSpec& spec, const CrossSection& cs, bool strict) {
  ResolvedAnsatz r;
  r.family = ansatz_family_from_string(spec.family);
  r.beta = spec.beta;
  r.exponent = spec.exponent;
  r.strict = strict;
  switch (r.family) {
    case AnsatzFamily::Kirchhoff:
      r.quantity = "korn_col3";
      r.h = {4e-3, 1e-3, 2.5e-4};
      r.bracket = {1.0, 1.0, 0.05};
      break;
    case AnsatzFamily::Localized: {
      r.quantity = "korn_col3";
      r.h = {1e-2, 1e-3, 1e-4, 1e-5};
      const double a = (2.0 * r.beta + 2.0) / (r.beta + 2.0);
      r.bracket = {a, a, 0.05};
      break;
    }
    case AnsatzFamily::LinearizedT:
      r.quantity = "korn_grad";
      r.h = {1e-3, 1e-4, 1e-5, 1e-6};
      r.bracket = {5.0 / 3.0, 5.0 / 3.0, 0.05};
      break;
  }
  if (!spec.quantity.empty()) r.quantity = spec.quantity;
  if (!spec.h.empty()) r.h = spec.h;
  if (spec.center) {
    r.center = *spec.center;
  } else if (r.family == AnsatzFamily::Kirchhoff) {
    r.center = 0.5 * cs.period;
  } else {
    const auto zeros = curvature_extrema(cs).zeros;
    if (!zeros.empty()) {
      r.center = zeros.front();
    } else if (strict) {
      throw Error(ErrorCode::NotAZero, "the curve has no curvature zero to localize at");
    } else {
      r.center = 0.5 * cs.period;
    }
  }
  return r;
}

AnsatzField make_ansatz(const ResolvedAnsatz& r, const CrossSection& cs, const ShellConfig& shell) {
  switch (r.family) {
    case AnsatzFamily::Kirchhoff: return kirchhoff_ansatz(cs, shell, r.center);
    case AnsatzFamily::Localized: return localized_ansatz(cs, shell, r.center, r.beta, r.strict);
    case AnsatzFamily::LinearizedT: return linearized_t_ansatz(cs, shell, r.center, r.exponent, r.strict);
  }
  throw Error(ErrorCode::InvalidConfig, "unknown ansatz family");
}

PointEvaluator ansatz_evaluator(const ResolvedAnsatz& r, const CrossSection& cs, const ExperimentConfig& cfg) {
  return [r, cs, cfg](double h) {
    const ShellConfig shell = cfg.shell(h);
    const AnsatzQuotients q = evaluate_ansatz_quotients(make_ansatz(r, cs, shell), shell);
    SweepPoint p;
    p.h = h;
    p.value = r.quantity == "korn_grad" ? q.korn_grad : r.quantity == "korn_col3" ? q.korn_col3 : q.rayleigh_cl;
    p.residual = 0.0;
    return p;
  };
}

}  // namespace cylbuck
