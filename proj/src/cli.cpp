#include "cylbuck/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>

#include "cylbuck/config.hpp"
#include "cylbuck/experiment.hpp"
#include "cylbuck/svg.hpp"

namespace cylbuck {

int exit_code(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::SolverDiverged:
    case ErrorCode::AllPointsFailed:
    case ErrorCode::QuadratureNotConverged:
    case ErrorCode::ZeroDenominator:
    case ErrorCode::TooFewPoints:
    case ErrorCode::DimensionMismatch:
      return 3;
    default:
      return 2;
  }
}

namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

struct Common {
  std::string config;
  std::string out;
  int jobs = 1;
  std::optional<int> m_max, nt, ntheta;
  std::optional<double> slack;
  std::optional<std::uint64_t> seed;
  bool strict = false;
  bool no_timestamp = false;
  bool dump_pencils = false;
};

struct CurveArgs {
  std::optional<std::string> profile;
  std::optional<double> period;
  std::optional<int> samples, zeros, order;
  std::optional<double> amplitude;
  std::optional<std::string> csv;
};

struct AnsatzArgs {
  std::optional<std::string> family, quantity;
  std::optional<int> beta;
  std::optional<double> exponent, center;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--config", c.config, "experiment config file (YAML)");
  app->add_option("--out", c.out, "output directory (overrides output.dir)");
  app->add_option("--jobs", c.jobs, "concurrent mode solves")->check(CLI::PositiveNumber);
  app->add_option("--m-max", c.m_max, "scan at least modes 1..M")->check(CLI::NonNegativeNumber);
  app->add_option("--nt", c.nt, "Gauss points through the thickness")->check(CLI::PositiveNumber);
  app->add_option("--ntheta", c.ntheta, "grid points around the cross-section")->check(CLI::PositiveNumber);
  app->add_option("--slack", c.slack, "bracket slack")->check(CLI::NonNegativeNumber);
  app->add_option("--seed", c.seed, "eigensolver start-vector seed");
  app->add_flag("--strict", c.strict, "reject Ansatz centers that are not curvature zeros");
  app->add_flag("--no-timestamp", c.no_timestamp, "omit the generation time from SVG output");
  app->add_flag("--dump-pencils", c.dump_pencils, "write the minimizing pencil per point");
}

ExperimentConfig load(const Common& c, ExperimentConfig cfg) {
  if (!c.config.empty()) cfg = load_config(c.config);
  if (!c.out.empty()) cfg.output_dir = c.out;
  if (c.m_max) cfg.m_max = *c.m_max;
  if (c.nt) cfg.nt = *c.nt;
  if (c.ntheta) cfg.ntheta = *c.ntheta;
  if (c.seed) cfg.seed = *c.seed;
  return cfg;
}

fs::path prepare_out(const ExperimentConfig& cfg) {
  const fs::path dir = cfg.output_dir;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create " + dir.string() + ": " + ec.message());
  return dir;
}

void write_json(const json& j, const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot open " + path.string());
  out << j.dump(2) << '\n';
}

json points_json(const SweepResult& s) {
  json arr = json::array();
  for (const auto& p : s.points) {
    json j;
    j["h"] = p.h;
    j["ok"] = p.ok;
    if (p.ok) {
      j["value"] = p.value;
      if (p.m_star >= 0) j["m_star"] = p.m_star;
      j["residual"] = p.residual;
    } else {
      j["error"] = p.error;
    }
    if (!p.mode_curve.empty()) {
      json curve = json::array();
      for (const auto& [m, v] : p.mode_curve) curve.push_back({m, v});
      j["mode_curve"] = curve;
      j["hit_cap"] = p.hit_cap;
    }
    if (!p.note.empty()) j["note"] = p.note;
    arr.push_back(j);
  }
  return arr;
}

json fit_json(const ExponentFit& fit, const BracketVerdict& v) {
  json j;
  j["alpha"] = fit.alpha;
  j["intercept"] = fit.intercept;
  j["r2"] = fit.r2;
  j["bracket"] = {v.lo, v.hi};
  j["slack"] = v.slack;
  j["c1"] = v.c1;
  j["c2"] = v.c2;
  j["verdict"] = v.pass ? "pass" : "fail";
  if (fit.h.size() > 3) {
    json loo = json::array();
    for (const auto& f : leave_one_out(fit)) {
      const BracketVerdict w = bracket_check(f, v.lo, v.hi, v.slack);
      loo.push_back({{"alpha", f.alpha}, {"c1", w.c1}, {"c2", w.c2}});
    }
    j["leave_one_out"] = loo;
  }
  return j;
}

/// Writes CSV, fit JSON and SVG for one sweep; returns the report entry.
/// Fit failures are recorded and rethrown after the CSV is on disk.
json emit_sweep(const SweepResult& s, const BracketSpec& b, const fs::path& dir, const std::string& stem,
                bool timestamp) {
  write_sweep_csv(s, dir / (stem + ".csv"));
  json entry;
  entry["quantity"] = s.quantity;
  entry["points"] = points_json(s);
  const ExponentFit fit = fit_exponent(s);
  const BracketVerdict v = bracket_check(fit, b.lo, b.hi, b.slack);
  write_fit_json(fit, v, dir / (stem + "_fit.json"));
  write_loglog_svg(dir / (stem + ".svg"), s.geometry + ": " + s.quantity, fit, v, timestamp);
  entry["fit"] = fit_json(fit, v);
  return entry;
}

void log_point(const SweepResult& s) {
  for (const auto& p : s.points) {
    if (p.ok)
      std::cerr << "  " << s.quantity << " h=" << p.h << " value=" << p.value
                << (p.m_star >= 0 ? " m*=" + std::to_string(p.m_star) : std::string()) << '\n';
    else
      std::cerr << "  " << s.quantity << " h=" << p.h << " failed: " << p.error << '\n';
  }
}

int cmd_curve(const Common& c, const CurveArgs& a) {
  ExperimentConfig cfg = load(c, {});
  GeometrySpec& g = cfg.geometry;
  if (a.profile) g.builder = *a.profile;
  if (a.period) g.period = *a.period;
  if (a.samples) g.samples = *a.samples;
  if (a.zeros) g.zeros = *a.zeros;
  if (a.order) g.order = *a.order;
  if (a.amplitude) g.amplitude = *a.amplitude;
  if (a.csv) {
    g.builder = "csv";
    g.path = *a.csv;
  }
  const CrossSection cs = build_cross_section(g);
  const fs::path dir = prepare_out(cfg);
  write_curve_csv(cs, dir / "curve.csv");

  const CurvatureExtrema ex = curvature_extrema(cs);
  json r;
  r["profile"] = geometry_id(g);
  r["period"] = cs.period;
  r["samples"] = cs.size();
  r["k_min"] = ex.k_min;
  r["k_max"] = ex.k_max;
  json zeros = json::array();
  for (double z : ex.zeros) zeros.push_back({{"theta", z}, {"c", quadratic_zero_constant(cs, z, 0.5)}});
  r["zeros"] = zeros;
  r["closure"] = cs.closure;
  r["correction"] = {{"magnitude", cs.correction.magnitude()},
                     {"relative_change", cs.correction.relative_change},
                     {"iterations", cs.correction.iterations}};
  write_json(r, dir / "curve_report.json");
  std::cerr << "curve: " << cs.size() << " samples, k in [" << ex.k_min << ", " << ex.k_max << "], "
            << ex.zeros.size() << " zero(s) -> " << dir.string() << '\n';
  return 0;
}

int cmd_sweep(const Common& c) {
  if (c.config.empty()) throw Error(ErrorCode::InvalidConfig, "sweep needs --config");
  const ExperimentConfig cfg = load(c, {});
  const CrossSection cs = build_cross_section(cfg.geometry);
  const std::string geom = geometry_id(cfg.geometry);
  const std::vector<double> hs = normalize_h_list(cfg.h);
  const fs::path dir = prepare_out(cfg);
  {
    std::ofstream out(dir / "config.yaml");
    out << serialize_config(cfg);
  }

  json report;
  report["geometry"] = geom;
  report["space"] = std::string(to_string(cfg.space));
  json entries = json::array();
  std::optional<Error> failure;
  for (Quantity q : cfg.quantities) {
    const std::string name(to_string(q));
    BracketSpec b = cfg.brackets.count(name) ? cfg.brackets.at(name) : default_bracket(cs, q);
    if (c.slack) b.slack = *c.slack;
    std::cerr << "sweep " << geom << " " << name << '\n';
    const SweepResult s =
        sweep_points(geom, name, hs, eigen_evaluator(cs, cfg, q, c.jobs, c.dump_pencils ? dir : fs::path{}), 1);
    log_point(s);
    json entry;
    try {
      if (s.successful().empty())
        throw Error(ErrorCode::AllPointsFailed, name + ": every h failed");
      entry = emit_sweep(s, b, dir, name, !c.no_timestamp);
      std::cerr << "  alpha=" << entry["fit"]["alpha"].get<double>() << " verdict "
                << entry["fit"]["verdict"].get<std::string>() << '\n';
    } catch (const Error& e) {
      write_sweep_csv(s, dir / (name + ".csv"));
      entry["quantity"] = name;
      entry["points"] = points_json(s);
      entry["error"] = e.what();
      if (!failure) failure = e;
    }
    entries.push_back(entry);
  }
  report["quantities"] = entries;
  write_json(report, dir / "report.json");
  if (failure) throw *failure;
  return 0;
}

int cmd_ansatz(const Common& c, const AnsatzArgs& a) {
  ExperimentConfig base;
  const std::string family = a.family.value_or("");
  if (c.config.empty() && family != "kirchhoff" && !family.empty()) base.geometry.builder = "flat-spot";
  ExperimentConfig cfg = load(c, base);
  AnsatzSpec spec = cfg.ansatz;
  if (a.family) spec.family = *a.family;
  if (a.beta) spec.beta = *a.beta;
  if (a.exponent) spec.exponent = *a.exponent;
  if (a.center) spec.center = *a.center;
  if (a.quantity) spec.quantity = *a.quantity;
  if (spec.quantity != "" && spec.quantity != "korn_grad" && spec.quantity != "korn_col3" &&
      spec.quantity != "rayleigh_cl")
    throw Error(ErrorCode::InvalidConfig, "unknown Ansatz quantity '" + spec.quantity +
                                              "' (korn_grad, korn_col3, rayleigh_cl)");

  const CrossSection cs = build_cross_section(cfg.geometry);
  const std::string geom = geometry_id(cfg.geometry);
  const ResolvedAnsatz r = resolve_ansatz(spec, cs, c.strict);
  // Preconditions are checked once up front so they surface as exit 2.
  make_ansatz(r, cs, cfg.shell(*std::max_element(r.h.begin(), r.h.end())));
  BracketSpec b = cfg.brackets.count("ansatz") ? cfg.brackets.at("ansatz") : r.bracket;
  if (c.slack) b.slack = *c.slack;
  const std::vector<double> hs = normalize_h_list(r.h);
  const fs::path dir = prepare_out(cfg);
  const std::string stem = "ansatz_" + std::string(to_string(r.family));

  std::cerr << "ansatz " << to_string(r.family) << " on " << geom << " (" << r.quantity << ")\n";
  const SweepResult s = sweep_points(geom, r.quantity, hs, ansatz_evaluator(r, cs, cfg), c.jobs);
  log_point(s);

  json report;
  report["family"] = std::string(to_string(r.family));
  report["geometry"] = geom;
  report["quantity"] = r.quantity;
  if (r.family == AnsatzFamily::Localized) report["beta"] = r.beta;
  if (r.family == AnsatzFamily::LinearizedT) report["exponent"] = r.exponent;
  report["center"] = r.center;
  std::optional<Error> failure;
  try {
    if (s.successful().empty()) throw Error(ErrorCode::AllPointsFailed, "every h failed");
    json entry = emit_sweep(s, b, dir, stem, !c.no_timestamp);
    report["points"] = entry["points"];
    report["fit"] = entry["fit"];
    std::cerr << "  alpha=" << entry["fit"]["alpha"].get<double>() << '\n';
  } catch (const Error& e) {
    write_sweep_csv(s, dir / (stem + ".csv"));
    report["points"] = points_json(s);
    report["error"] = e.what();
    failure = e;
  }

  const auto ok = s.successful();
  if (!ok.empty()) {
    const SweepPoint& top = ok.front();
    const Quantity q = matching_quantity(r.quantity);
    json cmp;
    cmp["h"] = top.h;
    cmp["quantity"] = std::string(to_string(q));
    cmp["ansatz"] = top.value;
    try {
      const SweepPoint e = eigen_evaluator(cs, cfg, q, c.jobs)(top.h);
      cmp["eigen"] = e.value;
      cmp["m_star"] = e.m_star;
      cmp["ratio"] = top.value / e.value;
      cmp["upper_bound"] = top.value >= e.value * (1.0 - 1e-6);
      std::cerr << "  comparison at h=" << top.h << ": ansatz " << top.value << " vs eigen " << e.value << '\n';
    } catch (const Error& e) {
      cmp["error"] = e.what();
    }
    report["comparison"] = cmp;
  }
  write_json(report, dir / (stem + "_report.json"));
  if (failure) throw *failure;
  return 0;
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"Buckling loads and Korn constants of thin cylindrical shells"};
  app.require_subcommand(1);
  Common common;
  CurveArgs curve;
  AnsatzArgs ansatz;

  CLI::App* c = app.add_subcommand("curve", "synthesize a cross-section and report its curvature");
  add_common(c, common);
  c->add_option("--profile", curve.profile, "circle | oval | trig | flat-spot | csv");
  c->add_option("--p", curve.period, "arc length of the cross-section");
  c->add_option("--samples", curve.samples, "curvature samples")->check(CLI::PositiveNumber);
  c->add_option("--zeros", curve.zeros, "flat-spot: number of curvature zeros")->check(CLI::PositiveNumber);
  c->add_option("--order", curve.order, "flat-spot: order of the zeros")->check(CLI::PositiveNumber);
  c->add_option("--amplitude", curve.amplitude, "oval: cos(2 theta) amplitude");
  c->add_option("--csv", curve.csv, "read the curvature column of a curve CSV");

  CLI::App* s = app.add_subcommand("sweep", "eigenvalue sweep over h with exponent fits");
  add_common(s, common);

  CLI::App* a = app.add_subcommand("ansatz", "explicit Ansatz quotients over h");
  add_common(a, common);
  a->add_option("--family", ansatz.family, "kirchhoff | localized | linearized-t");
  a->add_option("--beta", ansatz.beta, "localized: order of the curvature zero")->check(CLI::PositiveNumber);
  a->add_option("--exponent", ansatz.exponent, "linearized-t: theta scale exponent");
  a->add_option("--center", ansatz.center, "theta of the Ansatz center");
  a->add_option("--quantity", ansatz.quantity, "korn_grad | korn_col3 | rayleigh_cl");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (c->parsed()) return cmd_curve(common, curve);
    if (s->parsed()) return cmd_sweep(common);
    return cmd_ansatz(common, ansatz);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace cylbuck
