#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "cylbuck/ansatz.hpp"
#include "cylbuck/config.hpp"
#include "cylbuck/discretize.hpp"
#include "cylbuck/geometry.hpp"
#include "cylbuck/scaling.hpp"

namespace cylbuck {

/// Builds and closes the curve named by the spec. Unknown builders throw
/// InvalidConfig listing the valid names.
CrossSection build_cross_section(const GeometrySpec& spec);
std::string geometry_id(const GeometrySpec& spec);
bool has_curvature_zero(const CrossSection& cs);

/// Expected exponent band: zero-free curves follow h (lambda_cl, col3) and
/// h^(3/2) (grad); curves with quadratic zeros the bands between h^(3/2),
/// h^(8/5) and h^(5/3), h^(12/7).
BracketSpec default_bracket(const CrossSection& cs, Quantity q);

/// Mode-scan evaluator for one quantity; modes are solved `jobs` at a time.
/// A non-empty `dump_dir` enables pencil dumps named <quantity>_h<h>.bin.
PointEvaluator eigen_evaluator(const CrossSection& cs, const ExperimentConfig& cfg, Quantity q, int jobs = 1,
                               const std::filesystem::path& dump_dir = {});

struct ResolvedAnsatz {
  AnsatzFamily family = AnsatzFamily::Kirchhoff;
  int beta = 2;
  double exponent = 1.0 / 6.0;
  double center = 0.0;
  bool strict = false;
  std::string quantity;  // korn_grad | korn_col3 | rayleigh_cl
  std::vector<double> h;
  BracketSpec bracket;
};

/// Fills family defaults. With `strict`, a localized or linearized-t family
/// on a curve without curvature zeros throws NotAZero.
ResolvedAnsatz resolve_ansatz(const AnsatzSpec& spec, const CrossSection& cs, bool strict);
AnsatzField make_ansatz(const ResolvedAnsatz& r, const CrossSection& cs, const ShellConfig& shell);
PointEvaluator ansatz_evaluator(const ResolvedAnsatz& r, const CrossSection& cs, const ExperimentConfig& cfg);
/// The eigen-solver quantity an Ansatz quotient bounds from above.
Quantity matching_quantity(const std::string& ansatz_quantity);

}  // namespace cylbuck
