#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <numbers>
#include <random>

#include "cylbuck/discretize.hpp"
#include "cylbuck/error.hpp"
#include "oracles.hpp"

using namespace cylbuck;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double quad(const SparseMatrix& A, const Eigen::VectorXd& x) { return x.dot(A * x); }

}  // namespace

TEST(Discretize, LayoutRoundTrip) {
  const CrossSection cs = synthesize_curve(circle_profile(kTwoPi, 32));
  const ShellGrid grid(cs, ShellConfig{0.01, 1, 1, 0.3}, Discretization{3, 32});
  std::mt19937_64 rng(1);
  for (auto [m, space] : {std::pair{1, Space::Vh}, std::pair{0, Space::VhTheta}, std::pair{3, Space::VhTheta}}) {
    const ModeLayout layout = ModeLayout::make(grid, m, space);
    EXPECT_EQ(layout.size(), layout.ncomp() * 3 * 32);
    Eigen::VectorXd x = Eigen::VectorXd::Random(layout.size());
    EXPECT_EQ((layout.encode(layout.decode(x)) - x).norm(), 0.0);
  }
  EXPECT_EQ(ModeLayout::make(grid, 0, Space::VhTheta).ncomp(), 1);
  EXPECT_THROW(ModeLayout::make(grid, 0, Space::Vh), Error);
}

TEST(Discretize, QuadraticFormsMatchFunctionals) {
  std::mt19937_64 rng(21);
  const CrossSection cs = synthesize_curve(oval_profile(kTwoPi, 64, 0.3));
  const ShellGrid grid(cs, ShellConfig{0.03, 1.2, 1.0, 0.3}, Discretization{4, 64});
  const ModeAssembler assembler(grid);
  for (auto [m, space] : {std::pair{1, Space::Vh}, std::pair{4, Space::VhTheta}, std::pair{0, Space::VhTheta}}) {
    const AssembledForms F = assembler.assemble(m, space);
    for (int trial = 0; trial < 5; ++trial) {
      const ModeField f = oracle::random_mode_field(grid, m, space, rng);
      const Eigen::VectorXd x = F.layout.encode(f);
      const GradientField g = full_gradient(f, grid);
      const GradientField e = symmetric_part(g);
      auto rel = [](double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); };
      EXPECT_LT(rel(quad(F.A_sym, x), weighted_norm_sq(e, grid)), 1e-10);
      EXPECT_LT(rel(quad(F.B_grad, x), weighted_norm_sq(g, grid)), 1e-10);
      EXPECT_LT(rel(quad(F.A_energy, x), energy_form(e, grid)), 1e-10);
      EXPECT_LT(rel(quad(F.M_mass, x), weighted_norm_sq(f, grid)), 1e-10);
      if (m > 0) {
        EXPECT_LT(rel(quad(F.B_col3, x), col3_norm_sq(g, grid)), 1e-10);
      }
    }
    for (const SparseMatrix* S : {&F.A_energy, &F.A_sym, &F.B_grad, &F.B_col3, &F.M_mass})
      EXPECT_LE((SparseMatrix(S->transpose()) - *S).norm(), 1e-13 * S->norm());
  }
}

TEST(Discretize, DenseAndIterativeAgreeOnRandomPencils) {
  std::mt19937_64 rng(20240917);
  EigenOptions opt;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 150 + 10 * trial;
    SparseMatrix A, B;
    oracle::random_pencil(n, rng, A, B);
    opt.seed = trial;
    const EigenResult d = smallest_eig_dense(A, B, nullptr, opt);
    const EigenResult it = smallest_eig_iterative(A, B, nullptr, opt);
    EXPECT_NEAR(it.value, d.value, 1e-10 * std::abs(d.value)) << trial;
    EXPECT_LT(it.residual, 1e-10);
  }
}

TEST(Discretize, SmallPencilMatchesInertiaBisection) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    SparseMatrix A, B;
    oracle::random_pencil(3, rng, A, B);
    EigenOptions opt;
    opt.regularization = 0.0;
    const double ref = oracle::smallest_root_bisection(Eigen::MatrixXd(A), Eigen::MatrixXd(B));
    EXPECT_NEAR(smallest_eig(A, B, nullptr, opt).value, ref, 1e-12 * ref);
  }
}

TEST(Discretize, RitzValueOnSubspaceBoundsMinimum) {
  // the minimum over a 3-dimensional subspace is never below the global one
  std::mt19937_64 rng(8);
  SparseMatrix A, B;
  oracle::random_pencil(200, rng, A, B);
  EigenOptions opt;
  opt.regularization = 0.0;
  const double global = smallest_eig(A, B, nullptr, opt).value;
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::MatrixXd V = Eigen::MatrixXd::Random(200, 3);
    const Eigen::MatrixXd a = V.transpose() * A * V, b = V.transpose() * B * V;
    EXPECT_GE(oracle::smallest_root_bisection(a, b), global * (1 - 1e-12));
  }
}

TEST(Discretize, ModeScanIsIndependentOfJobs) {
  const CrossSection cs = synthesize_curve(oval_profile(kTwoPi, 48, 0.3));
  const ShellGrid grid(cs, ShellConfig{0.02, 1.0, 1.0, 0.3}, Discretization{3, 48});
  ScanOptions one, three;
  three.jobs = 3;
  const ScanResult a = scan_modes(grid, Space::VhTheta, Quantity::LambdaCl, one);
  const ScanResult b = scan_modes(grid, Space::VhTheta, Quantity::LambdaCl, three);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.m_star, b.m_star);
  ASSERT_GE(b.curve.size(), a.curve.size());
  for (std::size_t i = 0; i < a.curve.size(); ++i) EXPECT_EQ(a.curve[i].value, b.curve[i].value);
  EXPECT_GE(a.curve.size(), 4u);
  for (const auto& mv : a.curve) EXPECT_GE(mv.value, a.value);
}

TEST(Discretize, ScanMinimumIsAttainedByItsMode) {
  const CrossSection cs = synthesize_curve(circle_profile(kTwoPi, 48));
  const ShellGrid grid(cs, ShellConfig{0.02, 1.0, 1.0, 0.3}, Discretization{3, 48});
  const ScanResult r = korn_constant(grid, Space::VhTheta, KornDenominator::Col3);
  EXPECT_NEAR(korn_quotient(r.mode, grid, KornDenominator::Col3), r.value, 1e-8 * r.value);
  const ScanResult g = korn_constant(grid, Space::VhTheta, KornDenominator::Grad);
  EXPECT_LE(g.value, r.value);
}

TEST(Discretize, ThetaRefinementConverges) {
  const CrossSection cs = synthesize_curve(oval_profile(kTwoPi, 256, 0.3));
  std::vector<double> v;
  for (int n : {64, 128, 256}) {
    const ShellGrid grid(cs, ShellConfig{0.02, 1.0, 1.0, 0.3}, Discretization{3, n});
    ScanOptions opt;
    opt.m_cap = 3;
    v.push_back(scan_modes(grid, Space::VhTheta, Quantity::LambdaCl, opt).curve.front().value);
  }
  EXPECT_LT(std::abs(v[2] - v[1]), 0.25 * std::abs(v[1] - v[0]));
  EXPECT_LT(std::abs(v[2] - v[1]), 1e-2 * v[2]);
}

TEST(Discretize, PencilDumpRoundTrip) {
  SparseMatrix A, B;
  std::mt19937_64 rng(2);
  oracle::random_pencil(12, rng, A, B);
  const auto path = std::filesystem::temp_directory_path() / "cylbuck_pencil.bin";
  write_pencil(path, {&A, &B});
  const auto mats = read_pencil(path);
  ASSERT_EQ(mats.size(), 2u);
  EXPECT_EQ((mats[0] - Eigen::MatrixXd(A)).norm(), 0.0);
  EXPECT_EQ((mats[1] - Eigen::MatrixXd(B)).norm(), 0.0);
  EXPECT_EQ(std::filesystem::file_size(path), 16u + 2u * 144u * 8u);
  std::filesystem::remove(path);
}
