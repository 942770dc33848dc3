#include "cylbuck/config.hpp"

#include <yaml-cpp/yaml.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "cylbuck/error.hpp"

namespace cylbuck {

ShellConfig ExperimentConfig::shell(double h) const {
  ShellConfig s;
  s.h = h;
  s.L = L;
  s.E = E;
  s.nu = nu;
  return s;
}

Discretization ExperimentConfig::discretization() const { return {nt, ntheta, scheme}; }

ScanOptions ExperimentConfig::scan_options() const {
  ScanOptions o;
  o.m_max = m_max;
  o.m_cap = m_cap;
  o.weight = weight;
  o.eigen.tolerance = tolerance;
  o.eigen.seed = seed;
  return o;
}

std::string_view to_string(NormWeight w) noexcept { return w == NormWeight::Flat ? "flat" : "exact"; }

namespace {

class Parser {
 public:
  explicit Parser(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const YAML::Node& node, const std::string& field, const std::string& msg) const {
    std::ostringstream out;
    out << source_;
    if (node.IsDefined() && node.Mark().line >= 0)
      out << ':' << node.Mark().line + 1 << ':' << node.Mark().column + 1;
    out << ": " << field << ": " << msg;
    throw Error(ErrorCode::InvalidConfig, out.str());
  }

  void require_map(const YAML::Node& node, const std::string& field, const std::set<std::string>& allowed) const {
    if (!node.IsMap()) fail(node, field, "expected a table");
    for (const auto& kv : node) {
      const std::string key = kv.first.as<std::string>();
      if (!allowed.count(key)) {
        std::string list;
        for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
        fail(kv.first, field.empty() ? key : field + "." + key, "unknown key (expected one of: " + list + ")");
      }
    }
  }

  template <class T>
  T scalar(const YAML::Node& node, const std::string& field) const {
    if (!node.IsScalar()) fail(node, field, "expected a scalar");
    try {
      return node.as<T>();
    } catch (const YAML::Exception&) {
      fail(node, field, "cannot read '" + node.Scalar() + "'");
    }
  }

  double number(const YAML::Node& node, const std::string& field) const {
    const double v = scalar<double>(node, field);
    if (!std::isfinite(v)) fail(node, field, "must be finite");
    return v;
  }

  std::vector<double> numbers(const YAML::Node& node, const std::string& field) const {
    if (!node.IsSequence()) fail(node, field, "expected a list of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < node.size(); ++i)
      out.push_back(number(node[i], field + "[" + std::to_string(i) + "]"));
    return out;
  }

  template <class F>
  void optional(const YAML::Node& parent, const char* key, F&& f) const {
    const YAML::Node n = parent[key];
    if (n.IsDefined() && !n.IsNull()) f(n);
  }

 private:
  std::string source_;
};

}  // namespace

ExperimentConfig parse_config(const std::string& text, const std::string& source) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    std::ostringstream out;
    out << source << ':' << e.mark.line + 1 << ':' << e.mark.column + 1 << ": syntax: " << e.msg;
    throw Error(ErrorCode::InvalidConfig, out.str());
  }
  ExperimentConfig c;
  if (root.IsNull()) return c;
  Parser P(source);
  P.require_map(root, "", {"geometry", "material", "shell", "sweep", "solver", "brackets", "ansatz", "output", "seed"});

  P.optional(root, "geometry", [&](const YAML::Node& g) {
    P.require_map(g, "geometry", {"builder", "period", "samples", "amplitude", "cos", "sin", "zeros", "order", "path"});
    auto& s = c.geometry;
    P.optional(g, "builder", [&](const YAML::Node& n) {
      s.builder = P.scalar<std::string>(n, "geometry.builder");
      static const std::set<std::string> ok{"circle", "oval", "trig", "flat-spot", "csv"};
      if (!ok.count(s.builder)) P.fail(n, "geometry.builder", "unknown builder '" + s.builder + "' (circle, oval, trig, flat-spot, csv)");
    });
    P.optional(g, "period", [&](const YAML::Node& n) {
      s.period = P.number(n, "geometry.period");
      if (!(s.period > 0.0)) P.fail(n, "geometry.period", "must be positive");
    });
    P.optional(g, "samples", [&](const YAML::Node& n) {
      s.samples = P.scalar<int>(n, "geometry.samples");
      if (s.samples < 16) P.fail(n, "geometry.samples", "must be at least 16");
    });
    P.optional(g, "amplitude", [&](const YAML::Node& n) {
      s.amplitude = P.number(n, "geometry.amplitude");
      if (!(std::abs(s.amplitude) < 1.0)) P.fail(n, "geometry.amplitude", "must lie in (-1, 1)");
    });
    P.optional(g, "cos", [&](const YAML::Node& n) { s.cos_coeffs = P.numbers(n, "geometry.cos"); });
    P.optional(g, "sin", [&](const YAML::Node& n) { s.sin_coeffs = P.numbers(n, "geometry.sin"); });
    P.optional(g, "zeros", [&](const YAML::Node& n) {
      s.zeros = P.scalar<int>(n, "geometry.zeros");
      if (s.zeros < 1) P.fail(n, "geometry.zeros", "must be at least 1");
    });
    P.optional(g, "order", [&](const YAML::Node& n) {
      s.order = P.scalar<int>(n, "geometry.order");
      if (s.order < 2 || s.order % 2) P.fail(n, "geometry.order", "must be an even integer >= 2");
    });
    P.optional(g, "path", [&](const YAML::Node& n) { s.path = P.scalar<std::string>(n, "geometry.path"); });
    if (s.builder == "csv" && s.path.empty()) P.fail(g, "geometry.path", "required for the csv builder");
  });

  P.optional(root, "material", [&](const YAML::Node& m) {
    P.require_map(m, "material", {"E", "nu"});
    P.optional(m, "E", [&](const YAML::Node& n) {
      c.E = P.number(n, "material.E");
      if (!(c.E > 0.0)) P.fail(n, "material.E", "must be positive");
    });
    P.optional(m, "nu", [&](const YAML::Node& n) {
      c.nu = P.number(n, "material.nu");
      if (!(c.nu > 0.0 && c.nu < 0.5)) P.fail(n, "material.nu", "must lie in (0, 0.5)");
    });
  });

  P.optional(root, "shell", [&](const YAML::Node& s) {
    P.require_map(s, "shell", {"L", "space"});
    P.optional(s, "L", [&](const YAML::Node& n) {
      c.L = P.number(n, "shell.L");
      if (!(c.L > 0.0)) P.fail(n, "shell.L", "must be positive");
    });
    P.optional(s, "space", [&](const YAML::Node& n) {
      try {
        c.space = space_from_string(P.scalar<std::string>(n, "shell.space"));
      } catch (const Error& e) {
        P.fail(n, "shell.space", "expected vh or vh-theta");
      }
    });
  });

  P.optional(root, "sweep", [&](const YAML::Node& s) {
    P.require_map(s, "sweep", {"h", "quantities"});
    P.optional(s, "h", [&](const YAML::Node& n) {
      c.h = P.numbers(n, "sweep.h");
      for (std::size_t i = 0; i < c.h.size(); ++i)
        if (!(c.h[i] > 0.0 && c.h[i] < 0.5)) P.fail(n[i], "sweep.h[" + std::to_string(i) + "]", "must lie in (0, 0.5)");
      if (c.h.empty()) P.fail(n, "sweep.h", "must not be empty");
    });
    P.optional(s, "quantities", [&](const YAML::Node& n) {
      if (!n.IsSequence() || n.size() == 0) P.fail(n, "sweep.quantities", "expected a non-empty list");
      c.quantities.clear();
      for (std::size_t i = 0; i < n.size(); ++i) {
        const std::string field = "sweep.quantities[" + std::to_string(i) + "]";
        try {
          c.quantities.push_back(quantity_from_string(P.scalar<std::string>(n[i], field)));
        } catch (const Error&) {
          P.fail(n[i], field, "expected lambda_cl, korn_grad or korn_col3");
        }
      }
    });
  });

  P.optional(root, "solver", [&](const YAML::Node& s) {
    P.require_map(s, "solver", {"nt", "ntheta", "m_max", "m_cap", "theta_scheme", "tolerance", "weight"});
    P.optional(s, "nt", [&](const YAML::Node& n) {
      c.nt = P.scalar<int>(n, "solver.nt");
      if (c.nt < 2 || c.nt > 32) P.fail(n, "solver.nt", "must lie in [2, 32]");
    });
    P.optional(s, "ntheta", [&](const YAML::Node& n) {
      c.ntheta = P.scalar<int>(n, "solver.ntheta");
      if (c.ntheta < 16 || c.ntheta > 8192) P.fail(n, "solver.ntheta", "must lie in [16, 8192]");
    });
    P.optional(s, "m_max", [&](const YAML::Node& n) {
      c.m_max = P.scalar<int>(n, "solver.m_max");
      if (c.m_max < 1) P.fail(n, "solver.m_max", "must be at least 1");
    });
    P.optional(s, "m_cap", [&](const YAML::Node& n) {
      c.m_cap = P.scalar<int>(n, "solver.m_cap");
      if (c.m_cap < 1) P.fail(n, "solver.m_cap", "must be at least 1");
    });
    P.optional(s, "theta_scheme", [&](const YAML::Node& n) {
      try {
        c.scheme = theta_scheme_from_string(P.scalar<std::string>(n, "solver.theta_scheme"));
      } catch (const Error&) {
        P.fail(n, "solver.theta_scheme", "expected spectral, fd2, fd4, fd6 or fd8");
      }
    });
    P.optional(s, "tolerance", [&](const YAML::Node& n) {
      c.tolerance = P.number(n, "solver.tolerance");
      if (!(c.tolerance > 0.0 && c.tolerance < 1e-3)) P.fail(n, "solver.tolerance", "must lie in (0, 1e-3)");
    });
    P.optional(s, "weight", [&](const YAML::Node& n) {
      const std::string w = P.scalar<std::string>(n, "solver.weight");
      if (w == "exact") c.weight = NormWeight::ExactJacobian;
      else if (w == "flat") c.weight = NormWeight::Flat;
      else P.fail(n, "solver.weight", "expected exact or flat");
    });
  });

  P.optional(root, "brackets", [&](const YAML::Node& b) {
    P.require_map(b, "brackets", {"lambda_cl", "korn_grad", "korn_col3", "ansatz"});
    for (const auto& kv : b) {
      const std::string key = kv.first.as<std::string>();
      const std::string field = "brackets." + key;
      P.require_map(kv.second, field, {"lo", "hi", "slack"});
      BracketSpec spec;
      P.optional(kv.second, "lo", [&](const YAML::Node& n) { spec.lo = P.number(n, field + ".lo"); });
      P.optional(kv.second, "hi", [&](const YAML::Node& n) { spec.hi = P.number(n, field + ".hi"); });
      P.optional(kv.second, "slack", [&](const YAML::Node& n) {
        spec.slack = P.number(n, field + ".slack");
        if (spec.slack < 0.0) P.fail(n, field + ".slack", "must be non-negative");
      });
      if (spec.lo > spec.hi) P.fail(kv.second, field, "lo must not exceed hi");
      c.brackets[key] = spec;
    }
  });

  P.optional(root, "ansatz", [&](const YAML::Node& a) {
    P.require_map(a, "ansatz", {"family", "beta", "exponent", "center", "h", "quantity"});
    auto& s = c.ansatz;
    P.optional(a, "family", [&](const YAML::Node& n) {
      s.family = P.scalar<std::string>(n, "ansatz.family");
      if (s.family != "kirchhoff" && s.family != "localized" && s.family != "linearized-t")
        P.fail(n, "ansatz.family", "expected kirchhoff, localized or linearized-t");
    });
    P.optional(a, "beta", [&](const YAML::Node& n) {
      s.beta = P.scalar<int>(n, "ansatz.beta");
      if (s.beta < 2) P.fail(n, "ansatz.beta", "must be at least 2");
    });
    P.optional(a, "exponent", [&](const YAML::Node& n) {
      s.exponent = P.number(n, "ansatz.exponent");
      if (!(s.exponent > 0.0 && s.exponent < 1.0)) P.fail(n, "ansatz.exponent", "must lie in (0, 1)");
    });
    P.optional(a, "center", [&](const YAML::Node& n) { s.center = P.number(n, "ansatz.center"); });
    P.optional(a, "h", [&](const YAML::Node& n) {
      s.h = P.numbers(n, "ansatz.h");
      for (std::size_t i = 0; i < s.h.size(); ++i)
        if (!(s.h[i] > 0.0 && s.h[i] < 0.5)) P.fail(n[i], "ansatz.h[" + std::to_string(i) + "]", "must lie in (0, 0.5)");
    });
    P.optional(a, "quantity", [&](const YAML::Node& n) {
      s.quantity = P.scalar<std::string>(n, "ansatz.quantity");
      if (s.quantity != "korn_grad" && s.quantity != "korn_col3" && s.quantity != "rayleigh_cl")
        P.fail(n, "ansatz.quantity", "expected korn_grad, korn_col3 or rayleigh_cl");
    });
  });

  P.optional(root, "output", [&](const YAML::Node& o) {
    P.require_map(o, "output", {"dir"});
    P.optional(o, "dir", [&](const YAML::Node& n) { c.output_dir = P.scalar<std::string>(n, "output.dir"); });
  });
  P.optional(root, "seed", [&](const YAML::Node& n) { c.seed = P.scalar<std::uint64_t>(n, "seed"); });
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidConfig, "cannot open config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.string());
}

namespace {

// Shortest text that reads back to the same double.
std::string num(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  std::string s(buf, res.ptr);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

std::string list(const std::vector<double>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + num(v[i]);
  return s + "]";
}

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

std::string serialize_config(const ExperimentConfig& c) {
  std::ostringstream o;
  const auto& g = c.geometry;
  o << "geometry:\n"
    << "  builder: " << g.builder << "\n"
    << "  period: " << num(g.period) << "\n"
    << "  samples: " << g.samples << "\n"
    << "  amplitude: " << num(g.amplitude) << "\n"
    << "  cos: " << list(g.cos_coeffs) << "\n"
    << "  sin: " << list(g.sin_coeffs) << "\n"
    << "  zeros: " << g.zeros << "\n"
    << "  order: " << g.order << "\n";
  if (!g.path.empty()) o << "  path: " << quoted(g.path) << "\n";
  o << "material:\n  E: " << num(c.E) << "\n  nu: " << num(c.nu) << "\n";
  o << "shell:\n  L: " << num(c.L) << "\n  space: " << to_string(c.space) << "\n";
  o << "sweep:\n  h: " << list(c.h) << "\n  quantities: [";
  for (std::size_t i = 0; i < c.quantities.size(); ++i) o << (i ? ", " : "") << to_string(c.quantities[i]);
  o << "]\n";
  o << "solver:\n"
    << "  nt: " << c.nt << "\n"
    << "  ntheta: " << c.ntheta << "\n"
    << "  m_max: " << c.m_max << "\n"
    << "  m_cap: " << c.m_cap << "\n"
    << "  theta_scheme: " << to_string(c.scheme) << "\n"
    << "  tolerance: " << num(c.tolerance) << "\n"
    << "  weight: " << to_string(c.weight) << "\n";
  if (!c.brackets.empty()) {
    o << "brackets:\n";
    for (const auto& [key, b] : c.brackets)
      o << "  " << key << ": {lo: " << num(b.lo) << ", hi: " << num(b.hi) << ", slack: " << num(b.slack) << "}\n";
  }
  const auto& a = c.ansatz;
  o << "ansatz:\n"
    << "  family: " << a.family << "\n"
    << "  beta: " << a.beta << "\n"
    << "  exponent: " << num(a.exponent) << "\n";
  if (a.center) o << "  center: " << num(*a.center) << "\n";
  if (!a.h.empty()) o << "  h: " << list(a.h) << "\n";
  if (!a.quantity.empty()) o << "  quantity: " << a.quantity << "\n";
  o << "output:\n  dir: " << quoted(c.output_dir) << "\n";
  o << "seed: " << c.seed << "\n";
  return o.str();
}

}  // namespace cylbuck
