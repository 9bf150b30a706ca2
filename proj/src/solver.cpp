// SPDX-FileCopyrightText: Copyright (c) 2026 The mortarfem Authors
// SPDX-License-Identifier: Apache-2.0

#include <mortarfem/solver.hpp>

#include <Eigen/SparseCholesky>

#include <cmath>
#include <vector>

namespace mortarfem {

namespace {

using Factorization = Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>;

void factorize(Factorization& ldlt, const Eigen::SparseMatrix<double>& a) {
  ldlt.compute(a);
  // LDL^T without pivoting: check every pivot, not only the status flag
  if (ldlt.info() == Eigen::Success) {
    const Eigen::VectorXd& d = ldlt.vectorD();
    const auto& perm = ldlt.permutationP().indices();
    for (Eigen::Index k = 0; k < d.size(); ++k) {
      if (d[k] > 0.0 && std::isfinite(d[k])) continue;
      Index original = k;
      for (Eigen::Index i = 0; i < perm.size(); ++i)
        if (perm[i] == k) original = i;
      throw NotPositiveDefinite(original, d[k]);
    }
    return;
  }
  throw NotPositiveDefinite(-1, 0.0);
}

}  // namespace

Eigen::VectorXd solve_spd(const Eigen::SparseMatrix<double>& a, const Eigen::VectorXd& b) {
  MORTARFEM_THROW_IF(a.rows() != a.cols() || a.rows() != b.size(), InvalidArgument,
                     "solve_spd: dimension mismatch");
  Factorization ldlt;
  factorize(ldlt, a);
  Eigen::VectorXd x = ldlt.solve(b);
  const double bnorm = b.norm();
  if (bnorm == 0.0) return x;
  double rel = (a * x - b).norm() / bnorm;
  for (int step = 0; step < 3 && rel > kSolveTolerance; ++step) {
    x += ldlt.solve(b - a * x);
    rel = (a * x - b).norm() / bnorm;
  }
  if (!(rel <= kSolveTolerance))
    throw NumericalError("solve", "relative residual " + std::to_string(rel) +
                                      " above tolerance after refinement");
  return x;
}

Eigen::VectorXd solve_spd(const CoupledSystem& system) {
  return solve_spd(system.matrix.matrix(), system.rhs);
}

ConditionEstimate condition_estimate(const Eigen::SparseMatrix<double>& a) {
  constexpr int kIterations = 200;
  const Eigen::Index n = a.rows();
  Factorization ldlt;
  factorize(ldlt, a);

  // deterministic start vector with components in every direction
  Eigen::VectorXd start(n);
  for (Eigen::Index i = 0; i < n; ++i) start[i] = 1.0 + 0.5 * std::sin(1.0 + 7.0 * static_cast<double>(i));
  start.normalize();

  ConditionEstimate est;
  Eigen::VectorXd v = start;
  for (int it = 0; it < kIterations; ++it) {
    Eigen::VectorXd w = a * v;
    est.lambda_max = v.dot(w);
    v = w / w.norm();
  }
  est.lambda_max = v.dot(a * v);

  v = start;
  double mu = 0.0;
  for (int it = 0; it < kIterations; ++it) {
    Eigen::VectorXd w = ldlt.solve(v);
    v = w / w.norm();
  }
  mu = v.dot(ldlt.solve(v));
  est.lambda_min = 1.0 / mu;
  return est;
}

}  // namespace mortarfem
