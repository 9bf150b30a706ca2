// SPDX-FileCopyrightText: Copyright (c) 2026 The mortarfem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <mortarfem/common.hpp>
#include <mortarfem/mesh.hpp>

#include <Eigen/Core>

#include <array>
#include <span>
#include <vector>

namespace mortarfem {

/// Continuous Lagrange P1/P2 numbering over one mesh.
///
/// Vertex DOFs come first (global index = vertex index); for P2 the DOF of
/// mesh edge `e` is `n_vertices + e`. Local ordering per triangle: the three
/// vertices, then (P2) the midpoints of local edges 0, 1, 2.
struct DofMap {
  int degree = 1;
  Index n_dofs = 0;
  std::vector<std::array<Index, 6>> cell_dofs;
  std::vector<char> dirichlet;
  std::vector<Point> dof_coords;

  int dofs_per_cell() const { return degree == 1 ? 3 : 6; }
  std::span<const Index> cell(Index t) const {
    return {cell_dofs[static_cast<std::size_t>(t)].data(),
            static_cast<std::size_t>(dofs_per_cell())};
  }
  bool is_dirichlet(Index dof) const { return dirichlet[static_cast<std::size_t>(dof)] != 0; }
  std::vector<Index> dirichlet_dofs() const;
};

DofMap build_dofmap(const Mesh& mesh, int degree);

using BasisValues = std::array<double, 6>;
using BasisGradients = std::array<Point, 6>;
using BasisHessians = std::array<Eigen::Matrix2d, 6>;

/// Shape function values at a reference point; entries past dofs_per_cell are 0.
BasisValues eval_basis(int degree, const Point& xi);
/// Reference gradients of the shape functions.
BasisGradients eval_basis_grad(int degree, const Point& xi);
/// Reference Hessians (constant on the element for p <= 2).
BasisHessians eval_basis_hessian(int degree);

/// A mesh with its DOF numbering and cached element maps.
struct FeSpace {
  FeSpace(Mesh mesh, int degree);

  Mesh mesh;
  DofMap dofs;
  std::vector<ElementGeometry> geometry;

  Index n_dofs() const { return dofs.n_dofs; }
  int degree() const { return dofs.degree; }
  const ElementGeometry& element(Index t) const { return geometry[static_cast<std::size_t>(t)]; }

  /// FE function value in triangle `t` at reference point `xi`.
  double value(CoeffView coeffs, Index t, const Point& xi) const;
  /// Physical gradient in triangle `t` at reference point `xi`.
  Point gradient(CoeffView coeffs, Index t, const Point& xi) const;
  /// Physical Laplacian in triangle `t` (constant for p <= 2).
  double laplacian(CoeffView coeffs, Index t) const;
};

/// Nodal interpolant of `f`.
Eigen::VectorXd interpolate(const DofMap& dofs, const ScalarFunction& f);

}  // namespace mortarfem
