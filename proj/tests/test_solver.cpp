// SPDX-FileCopyrightText: Copyright (c) 2026 The mortarfem Authors
// SPDX-License-Identifier: Apache-2.0

#include "test_support.hpp"

#include <mortarfem/experiments.hpp>
#include <mortarfem/solver.hpp>

#include <gtest/gtest.h>

#include <cstring>

using namespace mortarfem;

namespace {

Eigen::SparseMatrix<double> sparse(const Eigen::MatrixXd& a) { return a.sparseView(); }

double dense_condition(const Eigen::SparseMatrix<double>& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Eigen::MatrixXd(a), Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff() / es.eigenvalues().minCoeff();
}

Discretization penalty_disc(double eps, int n1 = 3, int n2 = 4) {
  MethodConfig c;
  c.method = Method::Penalty;
  c.fixed_epsilon = eps;
  const auto [m1, m2] = gen_split_rect_meshes(n1, n2);
  return Discretization(problem_smooth(), c, m1, m2);
}

}  // namespace

TEST(SolveSpd, TwoByTwo) {
  Eigen::MatrixXd a(2, 2);
  a << 2, -1, -1, 2;
  const Eigen::VectorXd x = solve_spd(sparse(a), Eigen::Vector2d(1, 0));
  EXPECT_NEAR(x[0], 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(x[1], 1.0 / 3.0, 1e-15);
}

TEST(SolveSpd, Identity) {
  const Eigen::VectorXd b = support::random_vector(7);
  const Eigen::VectorXd x = solve_spd(sparse(Eigen::MatrixXd::Identity(7, 7)), b);
  EXPECT_EQ(x, b);
}

TEST(SolveSpd, ReportsOffendingIndex) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(4, 4);
  a(2, 2) = -3.0;
  try {
    solve_spd(sparse(a), Eigen::VectorXd::Ones(4));
    FAIL() << "expected NotPositiveDefinite";
  } catch (const NotPositiveDefinite& e) {
    EXPECT_EQ(e.index(), 2);
    EXPECT_EQ(e.pivot(), -3.0);
    EXPECT_EQ(e.stage(), "solve");
  }
}

TEST(SolveSpd, UnstableNitscheIsRejected) {
  MethodConfig c;
  c.alpha = 100.0;
  const auto [m1, m2] = gen_split_rect_meshes(2, 3, 2);
  const Discretization d(problem_smooth(), c, m1, m2);
  // dense oracle confirms indefiniteness
  EXPECT_LT(support::min_eigenvalue(support::dense(d.system.matrix.matrix())), 0.0);
  EXPECT_THROW(solve_spd(d.system), NotPositiveDefinite);
}

TEST(SolveSpd, ResidualContractAndDeterminism) {
  const Discretization d = penalty_disc(1e-4, 6, 8);
  const Eigen::VectorXd x = solve_spd(d.system);
  const auto& a = d.system.matrix.matrix();
  EXPECT_LE((a * x - d.system.rhs).norm() / d.system.rhs.norm(), kSolveTolerance);
  const Eigen::VectorXd y = solve_spd(d.system);
  EXPECT_EQ(std::memcmp(x.data(), y.data(), sizeof(double) * static_cast<std::size_t>(x.size())), 0);
}

TEST(SolveSpd, DimensionMismatch) {
  EXPECT_THROW(solve_spd(sparse(Eigen::MatrixXd::Identity(3, 3)), Eigen::VectorXd::Ones(2)), InvalidArgument);
}

TEST(ConditionEstimate, DiagonalOracles) {
  EXPECT_NEAR(condition_estimate(sparse(Eigen::MatrixXd::Identity(5, 5))).ratio(), 1.0, 0.1);
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(2, 2);
  d(0, 0) = 1;
  d(1, 1) = 100;
  EXPECT_NEAR(condition_estimate(sparse(d)).ratio(), 100.0, 10.0);
}

TEST(ConditionEstimate, MatchesDenseOracleOnPenaltySystems) {
  for (double eps : {0.1, 0.01}) {
    const Discretization d = penalty_disc(eps);
    const double est = condition_estimate(d.system).ratio();
    const double exact = dense_condition(d.system.matrix.matrix());
    EXPECT_NEAR(est / exact, 1.0, 0.1) << "eps=" << eps;
  }
}

TEST(ConditionEstimate, PenaltyConditioningGrowsAsEpsilonShrinks) {
  const double c1 = dense_condition(penalty_disc(0.1).system.matrix.matrix());
  const double c2 = dense_condition(penalty_disc(0.01).system.matrix.matrix());
  EXPECT_GT(c2 / c1, 5.0);
  EXPECT_LT(c2 / c1, 20.0);
}
