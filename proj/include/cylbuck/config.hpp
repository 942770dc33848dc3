#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cylbuck/discretize.hpp"
#include "cylbuck/periodic.hpp"
#include "cylbuck/shell_fields.hpp"

namespace cylbuck {

struct GeometrySpec {
  std::string builder = "circle";  // circle | oval | trig | flat-spot | csv
  double period = 6.283185307179586;
  int samples = 512;
  double amplitude = 0.3;                   // oval
  std::vector<double> cos_coeffs, sin_coeffs;  // trig
  int zeros = 1;                            // flat-spot
  int order = 2;                            // flat-spot
  std::string path;                         // csv
  bool operator==(const GeometrySpec&) const = default;
};

struct BracketSpec {
  double lo = 1.0;
  double hi = 1.0;
  double slack = 0.1;
  bool operator==(const BracketSpec&) const = default;
};

struct AnsatzSpec {
  std::string family = "kirchhoff";  // kirchhoff | localized | linearized-t
  int beta = 2;
  double exponent = 1.0 / 6.0;
  std::optional<double> center;
  std::vector<double> h;        // empty: family default
  std::string quantity;         // korn_grad | korn_col3 | rayleigh_cl; empty: family default
  bool operator==(const AnsatzSpec&) const = default;
};

/// Everything an experiment needs; see README for the file schema.
struct ExperimentConfig {
  GeometrySpec geometry;
  double E = 1.0;
  double nu = 0.3;
  double L = 1.0;
  Space space = Space::VhTheta;
  std::vector<double> h = {0.04, 0.02, 0.01, 0.005, 0.0025};
  std::vector<Quantity> quantities = {Quantity::LambdaCl};
  int nt = 8;
  int ntheta = 256;
  int m_max = 1;
  int m_cap = 400;
  ThetaScheme scheme = ThetaScheme::FD8;
  double tolerance = 1e-10;
  NormWeight weight = NormWeight::ExactJacobian;
  std::map<std::string, BracketSpec> brackets;  // keyed by quantity name
  AnsatzSpec ansatz;
  std::string output_dir = "out";
  std::uint64_t seed = 20240917;
  bool operator==(const ExperimentConfig&) const = default;

  ShellConfig shell(double h) const;
  Discretization discretization() const;
  ScanOptions scan_options() const;
};

/// Throws InvalidConfig with `source:line:column: field: message`.
ExperimentConfig parse_config(const std::string& text, const std::string& source = "<config>");
ExperimentConfig load_config(const std::filesystem::path& path);
std::string serialize_config(const ExperimentConfig& cfg);

std::string_view to_string(NormWeight w) noexcept;

}  // namespace cylbuck
