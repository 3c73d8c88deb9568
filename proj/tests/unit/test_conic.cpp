#include <cmath>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include "extremal/conic/solver.hpp"

using namespace extremal::conic;

namespace {

ConicProgram theta_cycle(int n) {
  ConicProgram p({{ConeKind::Psd, n}}, 1 + n);
  for (int i = 0; i < n; ++i) {
    p.add_coefficient(0, 0, i, i, 1.0);
    for (int j = i; j < n; ++j) p.add_objective(0, i, j, 1.0);
    p.add_coefficient(1 + i, 0, i, (i + 1) % n, 1.0);
  }
  p.set_rhs(0, 1.0);
  return p;
}

// Theta of a cycle from the circulant eigenvalue oracle: n * (-l_min) / (l_max - l_min)
// over the adjacency spectrum 2 cos(2 pi k / n) (Lovasz's formula for vertex-transitive graphs).
double theta_cycle_oracle(int n) {
  Eigen::MatrixXd adj = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) adj(i, (i + 1) % n) = adj((i + 1) % n, i) = 1.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(adj);
  const double lmin = eig.eigenvalues()(0);
  return n * (-lmin) / (1.0 - lmin / eig.eigenvalues()(n - 1)) / eig.eigenvalues()(n - 1);
}

// Random program with strictly feasible primal and dual points.
ConicProgram random_program(std::mt19937_64& rng, const std::vector<ConeBlock>& blocks, int m) {
  std::normal_distribution<double> g;
  ConicProgram p(blocks, m);
  std::vector<Eigen::MatrixXd> x0;
  Eigen::VectorXd y0(m);
  for (int j = 0; j < m; ++j) y0(j) = g(rng);
  for (int k = 0; k < static_cast<int>(blocks.size()); ++k) {
    const int s = blocks[k].size;
    if (blocks[k].kind == ConeKind::Psd) {
      Eigen::MatrixXd r(s, s);
      for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j) r(i, j) = g(rng);
      x0.push_back(r * r.transpose() + Eigen::MatrixXd::Identity(s, s));
      for (int j = 0; j < m; ++j)
        for (int a = 0; a < s; ++a)
          for (int b = a; b < s; ++b) p.add_coefficient(j, k, a, b, g(rng));
    } else {
      Eigen::MatrixXd x(s, 1);
      for (int i = 0; i < s; ++i) x(i, 0) = 1.0 + std::abs(g(rng));
      x0.push_back(x);
      for (int j = 0; j < m; ++j)
        for (int i = 0; i < s; ++i) p.add_coefficient(j, k, i, g(rng));
    }
  }
  for (int j = 0; j < m; ++j) p.set_rhs(j, p.apply(j, x0));
  // C = A^T y0 - Z0 with Z0 = I.
  const auto z = p.slack(y0);
  for (int k = 0; k < static_cast<int>(blocks.size()); ++k) {
    const int s = blocks[k].size;
    if (blocks[k].kind == ConeKind::Psd) {
      for (int a = 0; a < s; ++a)
        for (int b = a; b < s; ++b) p.add_objective(k, a, b, z[k](a, b) - (a == b ? 1.0 : 0.0));
    } else {
      for (int i = 0; i < s; ++i) p.add_objective(k, i, z[k](i, 0) - 1.0);
    }
  }
  return p;
}

}  // namespace

TEST(Solve, TraceObjective) {
  ConicProgram p({{ConeKind::Psd, 2}}, 1);
  p.add_objective(0, 0, 0, 1.0);
  p.add_objective(0, 1, 1, 1.0);
  p.add_coefficient(0, 0, 0, 0, 1.0);
  p.add_coefficient(0, 0, 1, 1, 1.0);
  p.set_rhs(0, 1.0);
  const auto r = solve(p, 1e-9);
  ASSERT_EQ(r.status, SolveStatus::Optimal);
  EXPECT_NEAR(r.primal_value, 1.0, 1e-8);
  EXPECT_NEAR(r.dual_value, 1.0, 1e-8);
}

TEST(Solve, OffDiagonalObjective) {
  ConicProgram p({{ConeKind::Psd, 2}}, 2);
  p.add_objective(0, 0, 1, 1.0);  // X12 + X21
  p.add_coefficient(0, 0, 0, 0, 1.0);
  p.add_coefficient(1, 0, 1, 1, 1.0);
  p.set_rhs(0, 1.0);
  p.set_rhs(1, 1.0);
  const auto r = solve(p, 1e-10);
  ASSERT_EQ(r.status, SolveStatus::Optimal);
  EXPECT_NEAR(r.primal_value, 2.0, 1e-8);
  EXPECT_NEAR(r.primal_solution[0](0, 1), 1.0, 1e-4);
}

TEST(Solve, ThetaOfPentagon) {
  const auto p = theta_cycle(5);
  const auto r = solve(p, 1e-10);
  ASSERT_EQ(r.status, SolveStatus::Optimal);
  EXPECT_NEAR(theta_cycle_oracle(5), std::sqrt(5.0), 1e-12);
  EXPECT_NEAR(r.primal_value, theta_cycle_oracle(5), 1e-7);
  EXPECT_NEAR(r.dual_value, theta_cycle_oracle(5), 1e-7);
  const auto kkt = check_kkt(p, r);
  EXPECT_LE(kkt.relative_gap, 1e-7);
  EXPECT_LE(std::abs(kkt.gap), 1e-7);
}

TEST(Solve, ThetaOfOddCycles) {
  for (int n : {7, 9, 11}) {
    const auto r = solve(theta_cycle(n), 1e-9);
    ASSERT_EQ(r.status, SolveStatus::Optimal);
    EXPECT_NEAR(r.primal_value, theta_cycle_oracle(n), 1e-6) << n;
  }
}

TEST(Solve, SmallLp) {
  // max x1 + 2 x2 s.t. x1 + x2 + s = 4, x1 + 3 x2 + t = 6: optimum 5 at (3, 1).
  ConicProgram p({{ConeKind::Nonneg, 4}}, 2);
  p.add_objective(0, 0, 1.0);
  p.add_objective(0, 1, 2.0);
  p.add_coefficient(0, 0, 0, 1.0);
  p.add_coefficient(0, 0, 1, 1.0);
  p.add_coefficient(0, 0, 2, 1.0);
  p.add_coefficient(1, 0, 0, 1.0);
  p.add_coefficient(1, 0, 1, 3.0);
  p.add_coefficient(1, 0, 3, 1.0);
  p.set_rhs(0, 4.0);
  p.set_rhs(1, 6.0);
  const auto r = solve(p, 1e-10);
  ASSERT_EQ(r.status, SolveStatus::Optimal);
  EXPECT_NEAR(r.primal_value, 5.0, 1e-8);
  EXPECT_NEAR(r.y(0), 0.5, 1e-6);
  EXPECT_NEAR(r.y(1), 0.5, 1e-6);
}

TEST(Solve, PostconditionsOnRandomPrograms) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const auto p = random_program(rng, {{ConeKind::Psd, 4}, {ConeKind::Nonneg, 5}, {ConeKind::Psd, 3}}, 6);
    const double tol = 1e-8;
    const auto r = solve(p, tol);
    ASSERT_EQ(r.status, SolveStatus::Optimal) << trial;
    EXPECT_LE(r.final_gap, tol);
    EXPECT_GE(r.dual_value, r.primal_value - tol * (1 + std::abs(r.primal_value)));
    const auto kkt = check_kkt(p, r);
    EXPECT_LE(kkt.dual_cone_residual, 1e-6);
    EXPECT_LE(kkt.primal_cone_residual, 0.0);
    EXPECT_LE(kkt.primal_residual, 1e-6 * (1 + p.rhs().norm()));
  }
}

TEST(Solve, Determinism) {
  std::mt19937_64 rng(5);
  const auto p = random_program(rng, {{ConeKind::Psd, 5}, {ConeKind::Nonneg, 3}}, 7);
  const auto a = solve(p, 1e-9), b = solve(p, 1e-9);
  EXPECT_EQ(a.iterations, b.iterations);
  EXPECT_EQ(a.primal_value, b.primal_value);
  EXPECT_EQ(a.dual_value, b.dual_value);
  EXPECT_EQ(a.y, b.y);
  for (std::size_t k = 0; k < a.primal_solution.size(); ++k) EXPECT_EQ(a.primal_solution[k], b.primal_solution[k]);
}

TEST(Solve, ScalingCovariance) {
  std::mt19937_64 rng(17);
  auto p = random_program(rng, {{ConeKind::Psd, 4}, {ConeKind::Nonneg, 4}}, 5);
  const auto base = solve(p, 1e-10);
  ASSERT_EQ(base.status, SolveStatus::Optimal);
  for (double s : {0.25, 3.0, 40.0}) {
    ConicProgram q = p;
    for (int j = 0; j < p.num_constraints(); ++j) q.set_rhs(j, s * p.rhs()(j));
    const auto r = solve(q, 1e-10);
    ASSERT_EQ(r.status, SolveStatus::Optimal);
    EXPECT_NEAR(r.dual_value, s * base.dual_value, 1e-8 * std::abs(s * base.dual_value));
  }
}

TEST(Solve, BlockIndependence) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 5; ++trial) {
    const auto p1 = random_program(rng, {{ConeKind::Psd, 3}}, 3);
    const auto p2 = random_program(rng, {{ConeKind::Nonneg, 4}, {ConeKind::Psd, 2}}, 2);
    ConicProgram joint({{ConeKind::Psd, 3}, {ConeKind::Nonneg, 4}, {ConeKind::Psd, 2}}, 5);
    for (const auto& e : p1.psd_entries(0, -1)) joint.add_objective(0, e.row, e.col, e.value);
    for (int j = 0; j < 3; ++j) {
      for (const auto& e : p1.psd_entries(0, j)) joint.add_coefficient(j, 0, e.row, e.col, e.value);
      joint.set_rhs(j, p1.rhs()(j));
    }
    for (int i = 0; i < 4; ++i) joint.add_objective(1, i, p2.nonneg_objective(0)(i));
    for (const auto& e : p2.psd_entries(1, -1)) joint.add_objective(2, e.row, e.col, e.value);
    for (int j = 0; j < 2; ++j) {
      for (int i = 0; i < 4; ++i) joint.add_coefficient(3 + j, 1, i, p2.nonneg_matrix(0)(i, j));
      for (const auto& e : p2.psd_entries(1, j)) joint.add_coefficient(3 + j, 2, e.row, e.col, e.value);
      joint.set_rhs(3 + j, p2.rhs()(j));
    }
    const auto r1 = solve(p1, 1e-10), r2 = solve(p2, 1e-10), rj = solve(joint, 1e-10);
    ASSERT_EQ(rj.status, SolveStatus::Optimal);
    EXPECT_NEAR(rj.dual_value, r1.dual_value + r2.dual_value, 1e-7 * (1 + std::abs(rj.dual_value)));
  }
}

TEST(CheckKkt, DetectsPerturbation) {
  const auto p = theta_cycle(5);
  auto r = solve(p, 1e-10);
  EXPECT_LE(check_kkt(p, r).primal_residual, 1e-8);
  r.primal_solution[0](2, 2) += 0.1;
  EXPECT_GE(check_kkt(p, r).primal_residual, 0.09);
}

TEST(Program, Validation) {
  EXPECT_THROW(ConicProgram({}, 1), std::invalid_argument);
  EXPECT_THROW(ConicProgram({{ConeKind::Psd, 2}}, 0), std::invalid_argument);
  ConicProgram p({{ConeKind::Psd, 2}, {ConeKind::Nonneg, 2}}, 1);
  EXPECT_THROW(p.add_coefficient(0, 0, 2, 0, 1.0), std::out_of_range);
  EXPECT_THROW(p.add_coefficient(0, 1, 0, 0, 1.0), std::invalid_argument);
  EXPECT_THROW(p.add_coefficient(3, 1, 0, 1.0), std::out_of_range);
  p.set_rhs(0, NAN);
  EXPECT_THROW(solve(p), std::invalid_argument);
  p.set_rhs(0, 1.0);
  EXPECT_THROW(solve(p, 1e-1), std::invalid_argument);
}

TEST(Program, DebugDump) {
  const auto p = theta_cycle(5);
  std::ostringstream out;
  p.write_debug_text(out);
  const std::string text = out.str();
  EXPECT_NE(text.find("block 0 psd 5"), std::string::npos);
  EXPECT_NE(text.find("constraint 5"), std::string::npos);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 1 + 1 + 6);
}
