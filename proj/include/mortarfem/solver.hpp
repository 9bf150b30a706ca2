// SPDX-FileCopyrightText: Copyright (c) 2026 The mortarfem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <mortarfem/assembly.hpp>

#include <Eigen/Core>

namespace mortarfem {

/// Relative residual ||Ax - b|| / ||b|| guaranteed by solve_spd.
inline constexpr double kSolveTolerance = 1e-10;

/// Sparse LDL^T solve of a constrained system. Throws NotPositiveDefinite
/// (carrying the global unknown index) on a non-positive pivot and
/// NumericalError if the residual contract cannot be met.
Eigen::VectorXd solve_spd(const CoupledSystem& system);
Eigen::VectorXd solve_spd(const Eigen::SparseMatrix<double>& a, const Eigen::VectorXd& b);

struct ConditionEstimate {
  double lambda_max = 0.0;
  double lambda_min = 0.0;
  double ratio() const { return lambda_max / lambda_min; }
};

/// Power iteration on A and on A^{-1} (200 steps each).
ConditionEstimate condition_estimate(const Eigen::SparseMatrix<double>& a);
inline ConditionEstimate condition_estimate(const CoupledSystem& system) {
  return condition_estimate(system.matrix.matrix());
}

}  // namespace mortarfem
