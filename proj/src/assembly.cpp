// SPDX-FileCopyrightText: Copyright (c) 2026 The mortarfem Authors
// SPDX-License-Identifier: Apache-2.0

#include <mortarfem/assembly.hpp>
#include <mortarfem/quadrature.hpp>

#include <algorithm>
#include <cmath>

namespace mortarfem {

void SymSparseMatrix::add_block(const SymSparseMatrix& block, Index offset) {
  const auto& m = block.matrix();
  for (int k = 0; k < m.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(m, k); it; ++it)
      add(it.row() + offset, it.col() + offset, it.value());
}

void SymSparseMatrix::finalize() {
  if (triplets_.empty()) return;
  Eigen::SparseMatrix<double> extra(n_, n_);
  extra.setFromTriplets(triplets_.begin(), triplets_.end());
  triplets_.clear();
  triplets_.shrink_to_fit();
  if (matrix_.nonZeros() == 0)
    matrix_ = std::move(extra);
  else
    matrix_ = matrix_ + extra;
  matrix_.makeCompressed();
}

const Eigen::SparseMatrix<double>& SymSparseMatrix::matrix() const {
  MORTARFEM_THROW_IF(!triplets_.empty(), InternalError,
                     "SymSparseMatrix: matrix accessed with pending triplets");
  return matrix_;
}

Eigen::SparseMatrix<double>& SymSparseMatrix::matrix() {
  finalize();
  return matrix_;
}

double SymSparseMatrix::symmetry_error() const {
  const auto& a = matrix();
  const Eigen::SparseMatrix<double> at = a.transpose();
  const Eigen::SparseMatrix<double> diff = a - at;
  double dmax = 0.0, amax = 0.0;
  for (int k = 0; k < diff.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(diff, k); it; ++it)
      dmax = std::max(dmax, std::abs(it.value()));
  for (int k = 0; k < a.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(a, k); it; ++it)
      amax = std::max(amax, std::abs(it.value()));
  return amax > 0.0 ? dmax / amax : 0.0;
}

SymSparseMatrix assemble_stiffness(const FeSpace& space) {
  const int p = space.degree();
  const auto& rule = triangle_rule(2 * (p - 1));
  const int nloc = space.dofs.dofs_per_cell();
  SymSparseMatrix a(space.n_dofs());
  for (Index t = 0; t < space.mesh.n_triangles(); ++t) {
    const auto& geo = space.element(t);
    const auto cell = space.dofs.cell(t);
    Eigen::Matrix<double, 6, 6> local = Eigen::Matrix<double, 6, 6>::Zero();
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const auto ref = eval_basis_grad(p, rule.points[q]);
      std::array<Point, 6> g;
      for (int a_ = 0; a_ < nloc; ++a_) g[static_cast<std::size_t>(a_)] = geo.physical_gradient(ref[static_cast<std::size_t>(a_)]);
      const double w = 2.0 * geo.area * rule.weights[q];
      for (int i = 0; i < nloc; ++i)
        for (int j = 0; j < nloc; ++j)
          local(i, j) += w * g[static_cast<std::size_t>(i)].dot(g[static_cast<std::size_t>(j)]);
    }
    for (int i = 0; i < nloc; ++i)
      for (int j = 0; j < nloc; ++j)
        a.add(cell[static_cast<std::size_t>(i)], cell[static_cast<std::size_t>(j)], local(i, j));
  }
  a.finalize();
  return a;
}

Eigen::VectorXd assemble_load(const FeSpace& space, const ScalarFunction& f) {
  const int p = space.degree();
  const auto& rule = triangle_rule(2 * p + 2);
  const int nloc = space.dofs.dofs_per_cell();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(space.n_dofs());
  for (Index t = 0; t < space.mesh.n_triangles(); ++t) {
    const auto& geo = space.element(t);
    const auto cell = space.dofs.cell(t);
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const auto phi = eval_basis(p, rule.points[q]);
      const double fw = f(geo.to_physical(rule.points[q])) * 2.0 * geo.area * rule.weights[q];
      for (int i = 0; i < nloc; ++i) b[cell[static_cast<std::size_t>(i)]] += fw * phi[static_cast<std::size_t>(i)];
    }
  }
  return b;
}

CoupledSystem make_coupled_system(const FeSpace& space1, const FeSpace& space2,
                                  const ScalarFunction& f1, const ScalarFunction& f2) {
  const Index n1 = space1.n_dofs();
  const Index n = n1 + space2.n_dofs();
  CoupledSystem sys{SymSparseMatrix(n), Eigen::VectorXd::Zero(n), n1, std::vector<char>(static_cast<std::size_t>(n), 0)};
  sys.matrix.add_block(assemble_stiffness(space1), 0);
  sys.matrix.add_block(assemble_stiffness(space2), n1);
  // explicit diagonal so that elimination always finds a slot for the 1
  for (Index i = 0; i < n; ++i) sys.matrix.add(i, i, 0.0);
  sys.rhs.head(n1) = assemble_load(space1, f1);
  sys.rhs.tail(space2.n_dofs()) = assemble_load(space2, f2);
  for (Index i = 0; i < n1; ++i) sys.constrained[static_cast<std::size_t>(i)] = space1.dofs.dirichlet[static_cast<std::size_t>(i)];
  for (Index i = 0; i < space2.n_dofs(); ++i)
    sys.constrained[static_cast<std::size_t>(n1 + i)] = space2.dofs.dirichlet[static_cast<std::size_t>(i)];
  return sys;
}

CoupledSystem apply_dirichlet(CoupledSystem system, const Eigen::VectorXd& values) {
  const Index n = system.size();
  MORTARFEM_THROW_IF(values.size() != n, InvalidArgument,
                     "apply_dirichlet: value vector has the wrong length");
  auto& a = system.matrix.matrix();
  const auto is_fixed = [&](Index i) { return system.constrained[static_cast<std::size_t>(i)] != 0; };

  for (int col = 0; col < a.outerSize(); ++col) {
    if (!is_fixed(col)) continue;
    const double g = values[col];
    for (Eigen::SparseMatrix<double>::InnerIterator it(a, col); it; ++it)
      if (!is_fixed(it.row())) system.rhs[it.row()] -= it.value() * g;
  }
  for (int col = 0; col < a.outerSize(); ++col) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(a, col); it; ++it) {
      if (!is_fixed(it.row()) && !is_fixed(col)) continue;
      it.valueRef() = it.row() == col ? 1.0 : 0.0;
    }
  }
  a.prune(0.0);
  for (Index i = 0; i < n; ++i) {
    if (!is_fixed(i)) continue;
    system.rhs[i] = values[i];
    if (a.coeff(i, i) != 1.0) a.coeffRef(i, i) = 1.0;
  }
  a.makeCompressed();
  return system;
}

}  // namespace mortarfem
