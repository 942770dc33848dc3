#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "cylbuck/forms.hpp"
#include "cylbuck/shell_fields.hpp"

namespace cylbuck {

using SparseMatrix = Eigen::SparseMatrix<double>;

/// Unknown numbering for one mode: index = (j * ncomp + slot(c)) * nt + i,
/// theta outermost so that the operators are block banded.
struct ModeLayout {
  int m = 1;
  Space space = Space::VhTheta;
  int nt = 0;
  int ntheta = 0;
  std::vector<int> components;  // active components, ascending

  /// Throws InvalidConfig when m is not admissible in `space`.
  static ModeLayout make(const ShellGrid& grid, int m, Space space);
  int ncomp() const noexcept { return static_cast<int>(components.size()); }
  int size() const noexcept { return ncomp() * nt * ntheta; }
  /// -1 when the component is not active.
  int slot(int c) const noexcept;
  int index(int c, int i, int j) const noexcept { return (j * ncomp() + slot(c)) * nt + i; }

  ModeField decode(const Eigen::VectorXd& x) const;
  Eigen::VectorXd encode(const ModeField& f) const;
};

struct AssembledForms {
  ModeLayout layout;
  SparseMatrix A_energy;  // int <L0 e, e>
  SparseMatrix A_sym;     // ||e(phi)||^2
  SparseMatrix B_grad;    // ||grad phi||^2
  SparseMatrix B_col3;    // ||col3(grad phi)||^2
  SparseMatrix M_mass;    // ||phi||^2
  int m() const noexcept { return layout.m; }
};

/// Precomputes the q-independent pieces of every form on a grid; each mode
/// is then a quadratic polynomial in the wavenumber q = pi m / L.
class ModeAssembler {
 public:
  explicit ModeAssembler(const ShellGrid& grid, NormWeight weight = NormWeight::ExactJacobian);
  AssembledForms assemble(int m, Space space) const;
  const ShellGrid& grid() const noexcept { return grid_; }

 private:
  struct Quadratic {
    std::array<SparseMatrix, 3> coeff;  // F = c0 + q c1 + q^2 c2
  };
  SparseMatrix evaluate(const Quadratic& F, int m, const ModeLayout& layout) const;

  const ShellGrid& grid_;
  Quadratic energy_, sym_, grad_, col3_, mass_;
};

/// One-shot assembly.
AssembledForms assemble_mode(int m, const ShellGrid& grid, Space space,
                             NormWeight weight = NormWeight::ExactJacobian);

enum class SolverKind { Auto, Dense, Iterative };
std::string_view to_string(SolverKind s) noexcept;

struct EigenOptions {
  /// < 0 selects 1e-12 trace(B) / trace(M).
  double regularization = -1.0;
  double tolerance = 1e-12;
  int dense_limit = 2000;
  int krylov_dim = 60;
  int max_restarts = 40;
  std::uint64_t seed = 20240917;
  SolverKind solver = SolverKind::Auto;
};

struct EigenResult {
  double value = 0.0;
  Eigen::VectorXd vector;  // normalized so that x^T (B + eps M) x = 1
  /// ||A x - value (B + eps M) x|| / (||A||_1 ||x||)
  double residual = 0.0;
  SolverKind solver = SolverKind::Dense;
  int iterations = 0;
  double regularization = 0.0;
};

/// Smallest eigenvalue of A x = lambda (B + eps M) x. M may be null (identity).
/// Iterative solves throw SolverDiverged on failure; smallest_eig falls back
/// to the dense solver when n <= 3 dense_limit.
EigenResult smallest_eig(const SparseMatrix& A, const SparseMatrix& B, const SparseMatrix* M,
                         const EigenOptions& options = {});
EigenResult smallest_eig_dense(const SparseMatrix& A, const SparseMatrix& B,
                               const SparseMatrix* M, const EigenOptions& options = {});
EigenResult smallest_eig_iterative(const SparseMatrix& A, const SparseMatrix& B,
                                   const SparseMatrix* M, const EigenOptions& options = {});

enum class Quantity { LambdaCl, KornGrad, KornCol3 };
std::string_view to_string(Quantity q) noexcept;
Quantity quantity_from_string(std::string_view name);
/// First admissible mode: m = 0 only for KornGrad in V_h^theta.
int first_mode(Space space, Quantity q);

struct ModeValue {
  int m = 0;
  double value = 0.0;
  double residual = 0.0;
  SolverKind solver = SolverKind::Dense;
};

struct ScanOptions {
  /// Scan at least through this mode.
  int m_max = 1;
  /// Hard cap on the adaptive extension.
  int m_cap = 400;
  /// Consecutive increases past the argmin that stop the scan.
  int patience = 3;
  int jobs = 1;
  NormWeight weight = NormWeight::ExactJacobian;
  EigenOptions eigen;
  /// When set, the pencil of the minimizing mode is written here.
  std::filesystem::path dump_path;
};

struct ScanResult {
  Quantity quantity = Quantity::LambdaCl;
  double value = 0.0;
  int m_star = 0;
  EigenResult best;
  ModeField mode;
  std::vector<ModeValue> curve;
  bool hit_cap = false;
  std::string dump_note;
};

/// Minimum over modes of the quantity's pencil with the adaptive stopping
/// rule. Ties go to the smaller m; results do not depend on `jobs`.
ScanResult scan_modes(const ShellGrid& grid, Space space, Quantity q, const ScanOptions& options = {});
ScanResult buckling_load(const ShellGrid& grid, Space space, const ScanOptions& options = {});
ScanResult korn_constant(const ShellGrid& grid, Space space, KornDenominator denom,
                         const ScanOptions& options = {});

/// Dense dump: u64 n, u64 count, then `count` row-major n x n float64
/// matrices, all little endian.
void write_pencil(const std::filesystem::path& path, const std::vector<const SparseMatrix*>& mats);
std::vector<Eigen::MatrixXd> read_pencil(const std::filesystem::path& path);

}  // namespace cylbuck
