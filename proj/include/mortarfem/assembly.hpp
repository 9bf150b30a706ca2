// SPDX-FileCopyrightText: Copyright (c) 2026 The mortarfem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <mortarfem/common.hpp>
#include <mortarfem/space.hpp>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <span>
#include <vector>

namespace mortarfem {

/// Symmetric sparse matrix built from accumulated (i, j, value) triplets.
///
/// Duplicate triplets are summed by `finalize()`. Entries may be added after
/// finalizing; the next `finalize()` merges them into the compressed matrix.
class SymSparseMatrix {
public:
  explicit SymSparseMatrix(Index n = 0) : n_(n), matrix_(n, n) {}

  Index size() const { return n_; }

  void add(Index i, Index j, double value) {
    triplets_.emplace_back(static_cast<int>(i), static_cast<int>(j), value);
  }
  /// Adds `block` (finalized) shifted by `offset` on both axes.
  void add_block(const SymSparseMatrix& block, Index offset);

  void finalize();
  bool has_pending() const { return !triplets_.empty(); }

  /// Compressed matrix; throws InternalError if triplets are pending.
  const Eigen::SparseMatrix<double>& matrix() const;
  Eigen::SparseMatrix<double>& matrix();

  /// max|A - A^T| / max|A|.
  double symmetry_error() const;

private:
  Index n_;
  std::vector<Eigen::Triplet<double>> triplets_;
  Eigen::SparseMatrix<double> matrix_;
};

/// Monolithic two-subdomain system; subdomain 2 unknowns start at `offset`.
struct CoupledSystem {
  SymSparseMatrix matrix;
  Eigen::VectorXd rhs;
  Index offset = 0;
  /// Dirichlet mask over the global unknowns.
  std::vector<char> constrained;

  Index size() const { return matrix.size(); }
};

/// Subdomain stiffness block A_ij = int grad(phi_j) . grad(phi_i).
SymSparseMatrix assemble_stiffness(const FeSpace& space);

/// Load vector b_i = int f phi_i.
Eigen::VectorXd assemble_load(const FeSpace& space, const ScalarFunction& f);

/// Bulk system for both subdomains, Dirichlet mask copied from the DOF maps.
/// The matrix is left unfinalized so interface terms can be added.
CoupledSystem make_coupled_system(const FeSpace& space1, const FeSpace& space2,
                                  const ScalarFunction& f1, const ScalarFunction& f2);

/// Symmetric elimination of the constrained unknowns: their rows and columns
/// are zeroed, the diagonal set to 1 and the right-hand side lifted so that
/// the solution takes `values` there. Finalizes the matrix first.
CoupledSystem apply_dirichlet(CoupledSystem system, const Eigen::VectorXd& values);

}  // namespace mortarfem
