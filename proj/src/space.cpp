// SPDX-FileCopyrightText: Copyright (c) 2026 The mortarfem Authors
// SPDX-License-Identifier: Apache-2.0

#include <mortarfem/space.hpp>

namespace mortarfem {

std::vector<Index> DofMap::dirichlet_dofs() const {
  std::vector<Index> out;
  for (Index i = 0; i < n_dofs; ++i)
    if (is_dirichlet(i)) out.push_back(i);
  return out;
}

DofMap build_dofmap(const Mesh& mesh, int degree) {
  MORTARFEM_THROW_IF(degree != 1 && degree != 2, InvalidArgument,
                     "build_dofmap: unsupported degree " + std::to_string(degree));
  DofMap d;
  d.degree = degree;
  const Index nv = mesh.n_vertices();
  d.n_dofs = degree == 1 ? nv : nv + mesh.n_edges();
  d.cell_dofs.resize(static_cast<std::size_t>(mesh.n_triangles()));
  for (Index t = 0; t < mesh.n_triangles(); ++t) {
    auto& cd = d.cell_dofs[static_cast<std::size_t>(t)];
    cd.fill(-1);
    const auto& tri = mesh.triangle(t);
    for (std::size_t k = 0; k < 3; ++k) cd[k] = tri[k];
    if (degree == 2)
      for (int l = 0; l < 3; ++l) cd[static_cast<std::size_t>(3 + l)] = nv + mesh.triangle_edge(t, l);
  }

  d.dof_coords.resize(static_cast<std::size_t>(d.n_dofs));
  for (Index v = 0; v < nv; ++v) d.dof_coords[static_cast<std::size_t>(v)] = mesh.vertex(v);
  if (degree == 2) {
    for (Index e = 0; e < mesh.n_edges(); ++e) {
      const auto& [a, b] = mesh.edge(e);
      d.dof_coords[static_cast<std::size_t>(nv + e)] = 0.5 * (mesh.vertex(a) + mesh.vertex(b));
    }
  }

  d.dirichlet.assign(static_cast<std::size_t>(d.n_dofs), 0);
  for (const auto& [key, tag] : mesh.boundary_tags()) {
    if (tag != FacetTag::Dirichlet) continue;
    d.dirichlet[static_cast<std::size_t>(key.first)] = 1;
    d.dirichlet[static_cast<std::size_t>(key.second)] = 1;
    if (degree == 2) {
      const Index e = *mesh.find_edge(key.first, key.second);
      d.dirichlet[static_cast<std::size_t>(nv + e)] = 1;
    }
  }
  return d;
}

BasisValues eval_basis(int degree, const Point& xi) {
  const double l0 = 1.0 - xi.x() - xi.y();
  const double l1 = xi.x();
  const double l2 = xi.y();
  if (degree == 1) return {l0, l1, l2, 0.0, 0.0, 0.0};
  return {l0 * (2.0 * l0 - 1.0), l1 * (2.0 * l1 - 1.0), l2 * (2.0 * l2 - 1.0),
          4.0 * l1 * l2,         4.0 * l2 * l0,         4.0 * l0 * l1};
}

BasisGradients eval_basis_grad(int degree, const Point& xi) {
  const Point g0(-1.0, -1.0), g1(1.0, 0.0), g2(0.0, 1.0);
  if (degree == 1) return {g0, g1, g2, Point::Zero(), Point::Zero(), Point::Zero()};
  const double l0 = 1.0 - xi.x() - xi.y();
  const double l1 = xi.x();
  const double l2 = xi.y();
  return {(4.0 * l0 - 1.0) * g0,         (4.0 * l1 - 1.0) * g1,         (4.0 * l2 - 1.0) * g2,
          4.0 * (l2 * g1 + l1 * g2),     4.0 * (l0 * g2 + l2 * g0),     4.0 * (l1 * g0 + l0 * g1)};
}

BasisHessians eval_basis_hessian(int degree) {
  BasisHessians h;
  for (auto& m : h) m.setZero();
  if (degree == 1) return h;
  const Point g0(-1.0, -1.0), g1(1.0, 0.0), g2(0.0, 1.0);
  const auto sym = [](const Point& a, const Point& b) -> Eigen::Matrix2d {
    return 4.0 * (a * b.transpose() + b * a.transpose());
  };
  h[0] = 4.0 * g0 * g0.transpose();
  h[1] = 4.0 * g1 * g1.transpose();
  h[2] = 4.0 * g2 * g2.transpose();
  h[3] = sym(g1, g2);
  h[4] = sym(g2, g0);
  h[5] = sym(g0, g1);
  return h;
}

FeSpace::FeSpace(Mesh m, int degree) : mesh(std::move(m)), dofs(build_dofmap(mesh, degree)) {
  geometry.reserve(static_cast<std::size_t>(mesh.n_triangles()));
  for (Index t = 0; t < mesh.n_triangles(); ++t) geometry.push_back(element_geometry(mesh, t));
}

double FeSpace::value(CoeffView coeffs, Index t, const Point& xi) const {
  const auto phi = eval_basis(degree(), xi);
  const auto cell = dofs.cell(t);
  double v = 0.0;
  for (std::size_t k = 0; k < cell.size(); ++k) v += coeffs[static_cast<std::size_t>(cell[k])] * phi[k];
  return v;
}

Point FeSpace::gradient(CoeffView coeffs, Index t, const Point& xi) const {
  const auto dphi = eval_basis_grad(degree(), xi);
  const auto cell = dofs.cell(t);
  Point g = Point::Zero();
  for (std::size_t k = 0; k < cell.size(); ++k) g += coeffs[static_cast<std::size_t>(cell[k])] * dphi[k];
  return element(t).physical_gradient(g);
}

double FeSpace::laplacian(CoeffView coeffs, Index t) const {
  if (degree() == 1) return 0.0;
  const auto hess = eval_basis_hessian(degree());
  const auto cell = dofs.cell(t);
  Eigen::Matrix2d h = Eigen::Matrix2d::Zero();
  for (std::size_t k = 0; k < cell.size(); ++k) h += coeffs[static_cast<std::size_t>(cell[k])] * hess[k];
  const Eigen::Matrix2d& binv = element(t).inverse_jacobian;
  return (binv.transpose() * h * binv).trace();
}

Eigen::VectorXd interpolate(const DofMap& dofs, const ScalarFunction& f) {
  Eigen::VectorXd out(dofs.n_dofs);
  for (Index i = 0; i < dofs.n_dofs; ++i) out[i] = f(dofs.dof_coords[static_cast<std::size_t>(i)]);
  return out;
}

}  // namespace mortarfem
