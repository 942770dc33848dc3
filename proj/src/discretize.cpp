#include "cylbuck/discretize.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <future>
#include <limits>
#include <random>
#include <sstream>

#include "cylbuck/error.hpp"

namespace cylbuck {

namespace {

using Triplets = std::vector<Eigen::Triplet<double>>;

SparseMatrix symmetrized(const SparseMatrix& F) {
  SparseMatrix Ft = F.transpose();
  SparseMatrix S = 0.5 * (F + Ft);
  S.makeCompressed();
  return S;
}

}  // namespace

ModeLayout ModeLayout::make(const ShellGrid& grid, int m, Space space) {
  ModeLayout l;
  l.m = m;
  l.space = space;
  l.nt = grid.nt();
  l.ntheta = grid.ntheta();
  if (m < 0) throw Error(ErrorCode::InvalidConfig, "negative wavenumber");
  if (m == 0) {
    if (space == Space::Vh) throw Error(ErrorCode::InvalidConfig, "m = 0 is not admissible in V_h");
    l.components = {0};
  } else {
    l.components = {0, 1, 2};
  }
  return l;
}

int ModeLayout::slot(int c) const noexcept {
  for (int s = 0; s < ncomp(); ++s)
    if (components[s] == c) return s;
  return -1;
}

ModeField ModeLayout::decode(const Eigen::VectorXd& x) const {
  if (x.size() != size()) throw Error(ErrorCode::DimensionMismatch, "vector does not match the mode layout");
  ModeField f;
  f.m = m;
  f.space = space;
  for (int c = 0; c < 3; ++c) {
    Eigen::MatrixXd& g = f.component(c);
    g = Eigen::MatrixXd::Zero(nt, ntheta);
    if (slot(c) < 0) continue;
    for (int j = 0; j < ntheta; ++j)
      for (int i = 0; i < nt; ++i) g(i, j) = x(index(c, i, j));
  }
  return f;
}

Eigen::VectorXd ModeLayout::encode(const ModeField& f) const {
  Eigen::VectorXd x(size());
  for (int c : components) {
    const Eigen::MatrixXd& g = f.component(c);
    if (g.rows() != nt || g.cols() != ntheta)
      throw Error(ErrorCode::DimensionMismatch, "mode field does not match the layout");
    for (int j = 0; j < ntheta; ++j)
      for (int i = 0; i < nt; ++i) x(index(c, i, j)) = g(i, j);
  }
  return x;
}

namespace {

// A linear map from unknowns to one grid quantity, affine in q: P + q Q.
struct LinearOp {
  SparseMatrix P, Q;
};

LinearOp add(const LinearOp& a, const LinearOp& b, double sa = 1.0, double sb = 1.0) {
  return {sa * a.P + sb * b.P, sa * a.Q + sb * b.Q};
}

void accumulate(std::array<SparseMatrix, 3>& F, const LinearOp& op, const Eigen::VectorXd& w,
                double scale) {
  const SparseMatrix PtW = op.P.transpose() * w.asDiagonal();
  const SparseMatrix QtW = op.Q.transpose() * w.asDiagonal();
  F[0] += scale * (PtW * op.P);
  SparseMatrix cross = PtW * op.Q;
  SparseMatrix cross_t = cross.transpose();
  F[1] += scale * (cross + cross_t);
  F[2] += scale * (QtW * op.Q);
}

}  // namespace

ModeAssembler::ModeAssembler(const ShellGrid& grid, NormWeight weight) : grid_(grid) {
  const int nt = grid.nt(), nth = grid.ntheta();
  const int N = nt * nth;
  const int n = 3 * N;

  std::array<SparseMatrix, 3> S;
  for (int c = 0; c < 3; ++c) {
    Triplets t;
    t.reserve(N);
    for (int j = 0; j < nth; ++j)
      for (int i = 0; i < nt; ++i) t.emplace_back(j * nt + i, (j * 3 + c) * nt + i, 1.0);
    S[c].resize(N, n);
    S[c].setFromTriplets(t.begin(), t.end());
  }

  SparseMatrix Dt(N, N), Dth(N, N);
  {
    Triplets t;
    t.reserve(static_cast<std::size_t>(N) * nt);
    for (int j = 0; j < nth; ++j)
      for (int i = 0; i < nt; ++i)
        for (int l = 0; l < nt; ++l)
          if (grid.dt()(i, l) != 0.0) t.emplace_back(j * nt + i, j * nt + l, grid.dt()(i, l));
    Dt.setFromTriplets(t.begin(), t.end());
  }
  {
    Triplets t;
    const SparseMatrix& D = grid.dtheta();
    t.reserve(static_cast<std::size_t>(D.nonZeros()) * nt);
    for (int col = 0; col < D.outerSize(); ++col)
      for (SparseMatrix::InnerIterator it(D, col); it; ++it)
        for (int i = 0; i < nt; ++i) t.emplace_back(it.row() * nt + i, it.col() * nt + i, it.value());
    Dth.setFromTriplets(t.begin(), t.end());
  }
  Eigen::VectorXd kdiag(N), invj(N);
  for (int j = 0; j < nth; ++j)
    for (int i = 0; i < nt; ++i) {
      kdiag(j * nt + i) = grid.curvature()(j);
      invj(j * nt + i) = 1.0 / grid.jacobian()(i, j);
    }
  const Eigen::MatrixXd wm = grid.weights(weight);
  const Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(wm.data(), N);

  const SparseMatrix zero(N, n);
  const auto K = kdiag.asDiagonal();
  const auto Ji = invj.asDiagonal();
  std::array<LinearOp, 9> G;
  auto at = [&G](int a, int b) -> LinearOp& { return G[3 * a + b]; };
  at(0, 0) = {Dt * S[0], zero};
  at(0, 1) = {Ji * SparseMatrix(Dth * S[0] - K * S[1]), zero};
  at(0, 2) = {zero, -S[0]};
  at(1, 0) = {Dt * S[1], zero};
  at(1, 1) = {Ji * SparseMatrix(Dth * S[1] + K * S[0]), zero};
  at(1, 2) = {zero, -S[1]};
  at(2, 0) = {Dt * S[2], zero};
  at(2, 1) = {Ji * SparseMatrix(Dth * S[2]), zero};
  at(2, 2) = {zero, S[2]};

  for (Quadratic* F : {&energy_, &sym_, &grad_, &col3_, &mass_})
    for (auto& c : F->coeff) c.resize(n, n);

  const IsotropicTensor T = IsotropicTensor::from(grid.config());
  for (int a = 0; a < 3; ++a) {
    accumulate(mass_.coeff, {S[a], zero}, w, 1.0);
    accumulate(col3_.coeff, at(a, 2), w, 1.0);
    for (int b = 0; b < 3; ++b) {
      accumulate(grad_.coeff, at(a, b), w, 1.0);
      const LinearOp e = add(at(a, b), at(b, a), 0.5, 0.5);
      accumulate(sym_.coeff, e, w, 1.0);
    }
  }
  const LinearOp trace = add(add(at(0, 0), at(1, 1)), at(2, 2));
  for (int d = 0; d < 3; ++d) energy_.coeff[d] = 2.0 * T.mu * sym_.coeff[d];
  accumulate(energy_.coeff, trace, w, T.lambda_L);
}

SparseMatrix ModeAssembler::evaluate(const Quadratic& F, int m, const ModeLayout& layout) const {
  const double L = grid_.config().L;
  if (m > 0) {
    const double q = grid_.wavenumber(m);
    return symmetrized(0.5 * L * (F.coeff[0] + q * F.coeff[1] + q * q * F.coeff[2]));
  }
  // m = 0 keeps phi_t only; every entry it reaches carries the cosine, whose
  // z-integral is L.
  const int nt = layout.nt, nth = layout.ntheta;
  Triplets t;
  t.reserve(static_cast<std::size_t>(layout.size()));
  for (int j = 0; j < nth; ++j)
    for (int i = 0; i < nt; ++i) t.emplace_back(layout.index(0, i, j), (j * 3 + 0) * nt + i, 1.0);
  SparseMatrix R(layout.size(), 3 * nt * nth);
  R.setFromTriplets(t.begin(), t.end());
  SparseMatrix Rt = R.transpose();
  return symmetrized(L * (R * F.coeff[0] * Rt));
}

AssembledForms ModeAssembler::assemble(int m, Space space) const {
  AssembledForms out;
  out.layout = ModeLayout::make(grid_, m, space);
  out.A_energy = evaluate(energy_, m, out.layout);
  out.A_sym = evaluate(sym_, m, out.layout);
  out.B_grad = evaluate(grad_, m, out.layout);
  out.B_col3 = evaluate(col3_, m, out.layout);
  out.M_mass = evaluate(mass_, m, out.layout);
  return out;
}

AssembledForms assemble_mode(int m, const ShellGrid& grid, Space space, NormWeight weight) {
  return ModeAssembler(grid, weight).assemble(m, space);
}

// ---------------------------------------------------------------------------
// eigen solvers

std::string_view to_string(SolverKind s) noexcept {
  switch (s) {
    case SolverKind::Auto: return "auto";
    case SolverKind::Dense: return "dense";
    case SolverKind::Iterative: return "iterative";
  }
  return "unknown";
}

namespace {

double norm1(const SparseMatrix& A) {
  double best = 0.0;
  for (int col = 0; col < A.outerSize(); ++col) {
    double s = 0.0;
    for (SparseMatrix::InnerIterator it(A, col); it; ++it) s += std::abs(it.value());
    best = std::max(best, s);
  }
  return best;
}

struct Pencil {
  SparseMatrix B;  // regularized
  double eps = 0.0;
};

Pencil regularize(const SparseMatrix& A, const SparseMatrix& B, const SparseMatrix* M,
                  const EigenOptions& opt) {
  const Eigen::Index n = A.rows();
  if (A.cols() != n || B.rows() != n || B.cols() != n || (M && (M->rows() != n || M->cols() != n)))
    throw Error(ErrorCode::DimensionMismatch, "pencil matrices must be square of equal size");
  SparseMatrix I(n, n);
  I.setIdentity();
  const SparseMatrix& Mref = M ? *M : I;
  Pencil p;
  p.eps = opt.regularization;
  if (p.eps < 0.0) {
    const double trm = Mref.diagonal().sum();
    p.eps = trm > 0.0 ? 1e-12 * B.diagonal().sum() / trm : 0.0;
  }
  p.B = B + p.eps * Mref;
  return p;
}

void finish(EigenResult& r, const SparseMatrix& A, const SparseMatrix& Breg) {
  const Eigen::VectorXd Ax = A * r.vector;
  const Eigen::VectorXd Bx = Breg * r.vector;
  const double xBx = r.vector.dot(Bx);
  r.value = r.vector.dot(Ax) / xBx;
  r.vector /= std::sqrt(xBx);
  const double denom = std::max(norm1(A), std::numeric_limits<double>::min());
  r.residual = (A * r.vector - r.value * (Breg * r.vector)).norm() / (denom * r.vector.norm());
}

}  // namespace

EigenResult smallest_eig_dense(const SparseMatrix& A, const SparseMatrix& B, const SparseMatrix* M,
                               const EigenOptions& options) {
  const Pencil p = regularize(A, B, M, options);
  const Eigen::MatrixXd Ad = Eigen::MatrixXd(A);
  const Eigen::MatrixXd Bd = Eigen::MatrixXd(p.B);
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(Ad, Bd);
  if (es.info() != Eigen::Success)
    throw Error(ErrorCode::SolverDiverged, "dense generalized eigensolver failed (B + eps M not definite?)");
  EigenResult r;
  r.solver = SolverKind::Dense;
  r.regularization = p.eps;
  r.vector = es.eigenvectors().col(0);
  finish(r, A, p.B);
  return r;
}

EigenResult smallest_eig_iterative(const SparseMatrix& A, const SparseMatrix& B, const SparseMatrix* M,
                                   const EigenOptions& options) {
  const Pencil p = regularize(A, B, M, options);
  const int n = static_cast<int>(A.rows());
  const SparseMatrix& Bm = p.B;

  // Shift-invert around sigma <= 0; a strictly negative shift is used when
  // A alone is singular to working precision.
  Eigen::SimplicialLDLT<SparseMatrix, Eigen::Lower, Eigen::AMDOrdering<int>> ldlt;
  double sigma = 0.0;
  ldlt.compute(A);
  auto healthy = [&] {
    if (ldlt.info() != Eigen::Success) return false;
    const Eigen::VectorXd d = ldlt.vectorD();
    return d.minCoeff() > 1e-14 * d.cwiseAbs().maxCoeff();
  };
  if (!healthy()) {
    sigma = -1e-8 * A.diagonal().sum() / std::max(Bm.diagonal().sum(), 1e-300);
    ldlt.compute(SparseMatrix(A - sigma * Bm));
    if (!healthy()) throw Error(ErrorCode::SolverDiverged, "shifted factorization is not positive definite");
  }

  const int kdim = std::min(options.krylov_dim, n);
  const int keep = std::max(1, kdim / 3);
  Eigen::MatrixXd V(n, kdim + 1), BV(n, kdim + 1), H = Eigen::MatrixXd::Zero(kdim + 1, kdim + 1);

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal;
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = normal(rng);
  Eigen::VectorXd Bv = Bm * v;
  double nv = std::sqrt(v.dot(Bv));
  V.col(0) = v / nv;
  BV.col(0) = Bv / nv;

  int start = 0;
  int iterations = 0;
  for (int restart = 0; restart <= options.max_restarts; ++restart) {
    int dim = kdim;
    double beta = 0.0;
    for (int j = start; j < kdim; ++j) {
      Eigen::VectorXd w = ldlt.solve(Eigen::VectorXd(BV.col(j)));
      ++iterations;
      Eigen::VectorXd h = BV.leftCols(j + 1).transpose() * w;
      w -= V.leftCols(j + 1) * h;
      const Eigen::VectorXd h2 = BV.leftCols(j + 1).transpose() * w;
      w -= V.leftCols(j + 1) * h2;
      h += h2;
      H.col(j).head(j + 1) = h;
      const Eigen::VectorXd Bw = Bm * w;
      beta = std::sqrt(std::max(0.0, w.dot(Bw)));
      H(j + 1, j) = beta;
      if (beta <= 1e-13 * std::max(h.cwiseAbs().maxCoeff(), H(0, 0))) {
        dim = j + 1;
        beta = 0.0;
        break;
      }
      V.col(j + 1) = w / beta;
      BV.col(j + 1) = Bw / beta;
    }
    const Eigen::MatrixXd Hs = 0.5 * (H.topLeftCorner(dim, dim) + H.topLeftCorner(dim, dim).transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Hs);
    const Eigen::VectorXd theta = es.eigenvalues();
    const Eigen::MatrixXd S = es.eigenvectors();
    const double top = theta(dim - 1);
    const double res = beta * std::abs(S(dim - 1, dim - 1));
    if (top > 0.0 && (res <= options.tolerance * top || dim < kdim || dim == n)) {
      EigenResult r;
      r.solver = SolverKind::Iterative;
      r.iterations = iterations;
      r.regularization = p.eps;
      r.vector = V.leftCols(dim) * S.col(dim - 1);
      finish(r, A, Bm);
      return r;
    }
    // thick restart on the `keep` largest Ritz pairs
    const int kp = std::min(keep, dim - 1);
    const Eigen::MatrixXd Sk = S.rightCols(kp);
    const Eigen::MatrixXd Y = V.leftCols(dim) * Sk;
    const Eigen::MatrixXd BY = BV.leftCols(dim) * Sk;
    const Eigen::VectorXd vnext = V.col(dim), Bvnext = BV.col(dim);
    V.leftCols(kp) = Y;
    BV.leftCols(kp) = BY;
    V.col(kp) = vnext;
    BV.col(kp) = Bvnext;
    H.setZero();
    for (int i = 0; i < kp; ++i) {
      H(i, i) = theta(dim - kp + i);
      H(kp, i) = beta * Sk(dim - 1, i);
    }
    start = kp;
  }
  std::ostringstream msg;
  msg << "shift-invert Lanczos did not converge after " << iterations << " solves (n=" << n << ")";
  throw Error(ErrorCode::SolverDiverged, msg.str());
}

EigenResult smallest_eig(const SparseMatrix& A, const SparseMatrix& B, const SparseMatrix* M,
                         const EigenOptions& options) {
  const int n = static_cast<int>(A.rows());
  SolverKind kind = options.solver;
  if (kind == SolverKind::Auto) kind = n <= options.dense_limit ? SolverKind::Dense : SolverKind::Iterative;
  if (kind == SolverKind::Dense) return smallest_eig_dense(A, B, M, options);
  try {
    return smallest_eig_iterative(A, B, M, options);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::SolverDiverged || n > 3 * options.dense_limit) throw;
    return smallest_eig_dense(A, B, M, options);
  }
}

// ---------------------------------------------------------------------------
// mode scans

std::string_view to_string(Quantity q) noexcept {
  switch (q) {
    case Quantity::LambdaCl: return "lambda_cl";
    case Quantity::KornGrad: return "korn_grad";
    case Quantity::KornCol3: return "korn_col3";
  }
  return "unknown";
}

Quantity quantity_from_string(std::string_view name) {
  for (auto q : {Quantity::LambdaCl, Quantity::KornGrad, Quantity::KornCol3})
    if (to_string(q) == name) return q;
  throw Error(ErrorCode::InvalidConfig,
              "unknown quantity '" + std::string(name) + "' (lambda_cl, korn_grad, korn_col3)");
}

int first_mode(Space space, Quantity q) {
  return (space == Space::VhTheta && q == Quantity::KornGrad) ? 0 : 1;
}

namespace {

struct PencilRefs {
  const SparseMatrix* A;
  SparseMatrix B;
};

PencilRefs select(const AssembledForms& F, Quantity q, double E) {
  switch (q) {
    case Quantity::LambdaCl: return {&F.A_energy, E * F.B_col3};
    case Quantity::KornGrad: return {&F.A_sym, F.B_grad};
    case Quantity::KornCol3: return {&F.A_sym, F.B_col3};
  }
  return {&F.A_sym, F.B_grad};
}

struct ModeSolve {
  int m = 0;
  EigenResult eig;
};

ModeSolve solve_mode(const ModeAssembler& assembler, int m, Space space, Quantity q,
                     const EigenOptions& base) {
  const AssembledForms F = assembler.assemble(m, space);
  const PencilRefs P = select(F, q, assembler.grid().config().E);
  EigenOptions opt = base;
  opt.seed = base.seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(m + 1));
  return {m, smallest_eig(*P.A, P.B, &F.M_mass, opt)};
}

// True once the last `patience` steps all increase and start past the argmin.
bool should_stop(const std::vector<ModeValue>& curve, int m_max, int patience) {
  const int n = static_cast<int>(curve.size());
  if (n == 0 || curve.back().m < m_max) return false;
  int arg = 0;
  for (int i = 1; i < n; ++i)
    if (curve[i].value < curve[arg].value) arg = i;
  if (n - 1 - arg < patience) return false;
  for (int i = n - patience; i < n; ++i)
    if (!(curve[i].value > curve[i - 1].value)) return false;
  return true;
}

}  // namespace

ScanResult scan_modes(const ShellGrid& grid, Space space, Quantity q, const ScanOptions& options) {
  if (options.m_max < 1) throw Error(ErrorCode::InvalidConfig, "m_max must be at least 1");
  const ModeAssembler assembler(grid, options.weight);
  ScanResult out;
  out.quantity = q;
  std::vector<ModeSolve> solves;
  const int jobs = std::max(1, options.jobs);
  int next = first_mode(space, q);
  bool done = false;
  while (!done) {
    if (next > options.m_cap) {
      out.hit_cap = true;
      break;
    }
    std::vector<int> batch;
    for (int b = 0; b < jobs && next <= options.m_cap; ++b) batch.push_back(next++);
    std::vector<ModeSolve> results(batch.size());
    if (batch.size() == 1) {
      results[0] = solve_mode(assembler, batch[0], space, q, options.eigen);
    } else {
      std::vector<std::future<ModeSolve>> futures;
      for (int m : batch)
        futures.push_back(std::async(std::launch::async, solve_mode, std::cref(assembler), m, space, q,
                                     std::cref(options.eigen)));
      for (std::size_t b = 0; b < batch.size(); ++b) results[b] = futures[b].get();
    }
    // Consume in order so that the stopping point matches a sequential scan.
    for (auto& r : results) {
      out.curve.push_back({r.m, r.eig.value, r.eig.residual, r.eig.solver});
      solves.push_back(std::move(r));
      if (should_stop(out.curve, options.m_max, options.patience)) {
        done = true;
        break;
      }
    }
  }
  if (out.curve.empty()) throw Error(ErrorCode::InvalidConfig, "no admissible modes were scanned");
  std::size_t arg = 0;
  for (std::size_t i = 1; i < out.curve.size(); ++i)
    if (out.curve[i].value < out.curve[arg].value) arg = i;
  out.value = out.curve[arg].value;
  out.m_star = out.curve[arg].m;
  out.best = solves[arg].eig;
  out.mode = ModeLayout::make(grid, out.m_star, space).decode(out.best.vector);

  if (!options.dump_path.empty()) {
    const AssembledForms F = assembler.assemble(out.m_star, space);
    const PencilRefs P = select(F, q, grid.config().E);
    constexpr int kDumpLimit = 4096;
    if (F.layout.size() <= kDumpLimit) {
      write_pencil(options.dump_path, {P.A, &P.B, &F.M_mass});
      out.dump_note = options.dump_path.string();
    } else {
      std::ostringstream note;
      note << "skipped: n=" << F.layout.size() << " exceeds dense dump limit " << kDumpLimit;
      out.dump_note = note.str();
    }
  }
  return out;
}

ScanResult buckling_load(const ShellGrid& grid, Space space, const ScanOptions& options) {
  return scan_modes(grid, space, Quantity::LambdaCl, options);
}

ScanResult korn_constant(const ShellGrid& grid, Space space, KornDenominator denom,
                         const ScanOptions& options) {
  return scan_modes(grid, space, denom == KornDenominator::Grad ? Quantity::KornGrad : Quantity::KornCol3,
                    options);
}

// ---------------------------------------------------------------------------
// pencil dump

namespace {

static_assert(std::endian::native == std::endian::little, "pencil dump assumes a little-endian host");

void put_u64(std::ostream& out, std::uint64_t v) { out.write(reinterpret_cast<const char*>(&v), 8); }

std::uint64_t get_u64(std::istream& in) {
  std::uint64_t v = 0;
  in.read(reinterpret_cast<char*>(&v), 8);
  return v;
}

}  // namespace

void write_pencil(const std::filesystem::path& path, const std::vector<const SparseMatrix*>& mats) {
  if (mats.empty()) throw Error(ErrorCode::DimensionMismatch, "nothing to dump");
  const auto n = static_cast<std::uint64_t>(mats.front()->rows());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot open " + path.string());
  put_u64(out, n);
  put_u64(out, mats.size());
  for (const SparseMatrix* M : mats) {
    if (static_cast<std::uint64_t>(M->rows()) != n || static_cast<std::uint64_t>(M->cols()) != n)
      throw Error(ErrorCode::DimensionMismatch, "pencil matrices differ in size");
    const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> D = Eigen::MatrixXd(*M);
    out.write(reinterpret_cast<const char*>(D.data()), static_cast<std::streamsize>(n * n * sizeof(double)));
  }
  if (!out) throw Error(ErrorCode::Io, "write failed for " + path.string());
}

std::vector<Eigen::MatrixXd> read_pencil(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  const std::uint64_t n = get_u64(in), count = get_u64(in);
  if (!in || n > (1u << 16) || count > 64) throw Error(ErrorCode::Io, "malformed pencil header");
  std::vector<Eigen::MatrixXd> out;
  for (std::uint64_t c = 0; c < count; ++c) {
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> D(n, n);
    in.read(reinterpret_cast<char*>(D.data()), static_cast<std::streamsize>(n * n * sizeof(double)));
    if (!in) throw Error(ErrorCode::Io, "truncated pencil file");
    out.emplace_back(D);
  }
  return out;
}

}  // namespace cylbuck
