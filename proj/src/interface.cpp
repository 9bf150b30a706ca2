// SPDX-FileCopyrightText: Copyright (c) 2026 The mortarfem Authors
// SPDX-License-Identifier: Apache-2.0

#include <mortarfem/interface.hpp>

#include <algorithm>
#include <cmath>

namespace mortarfem {

namespace {

struct InterfaceFacet {
  double s0;
  double s1;
  MortarSide side;
};

int local_edge_of(const Mesh& mesh, Index t, Index e) {
  for (int l = 0; l < 3; ++l)
    if (mesh.triangle_edge(t, l) == e) return l;
  throw InternalError("interface: edge not found in its adjacent triangle");
}

std::vector<InterfaceFacet> collect_facets(const Mesh& mesh, const LineSegment& line, double tol,
                                           const char* which) {
  std::vector<InterfaceFacet> facets;
  for (const auto& [key, tag] : mesh.boundary_tags()) {
    if (tag != FacetTag::Interface) continue;
    const Point& pa = mesh.vertex(key.first);
    const Point& pb = mesh.vertex(key.second);
    MORTARFEM_THROW_IF(line.distance_to_line(pa) > tol || line.distance_to_line(pb) > tol,
                       GeometryMismatch,
                       std::string("build_mortar_segments: interface facets of ") + which +
                           " are not collinear with the interface line");
    const Index e = *mesh.find_edge(key.first, key.second);
    const Index t = mesh.edge_triangles(e)[0];
    double s0 = line.arc_length(pa);
    double s1 = line.arc_length(pb);
    if (s0 > s1) std::swap(s0, s1);
    facets.push_back({s0, s1, MortarSide{t, local_edge_of(mesh, t, e), s0, s1}});
  }
  MORTARFEM_THROW_IF(facets.empty(), GeometryMismatch,
                     std::string("build_mortar_segments: ") + which + " has no interface facets");
  std::sort(facets.begin(), facets.end(),
            [](const InterfaceFacet& a, const InterfaceFacet& b) { return a.s0 < b.s0; });
  for (std::size_t k = 1; k < facets.size(); ++k)
    MORTARFEM_THROW_IF(std::abs(facets[k].s0 - facets[k - 1].s1) > tol, GeometryMismatch,
                       std::string("build_mortar_segments: interface facets of ") + which +
                           " leave a gap or overlap");
  return facets;
}

const InterfaceFacet& facet_containing(const std::vector<InterfaceFacet>& facets, double s) {
  auto it = std::upper_bound(facets.begin(), facets.end(), s,
                             [](double v, const InterfaceFacet& f) { return v < f.s0; });
  if (it != facets.begin()) --it;
  return *it;
}

}  // namespace

MortarInterface build_mortar_segments(const Mesh& mesh1, const Mesh& mesh2) {
  // The interface line is spanned by the extreme Interface vertices of mesh 1.
  const Index first_edge = [&] {
    for (const auto& [key, tag] : mesh1.boundary_tags())
      if (tag == FacetTag::Interface) return *mesh1.find_edge(key.first, key.second);
    throw GeometryMismatch("build_mortar_segments: mesh 1 has no interface facets");
  }();
  const Point p = mesh1.vertex(mesh1.edge(first_edge).first);
  const Point q = mesh1.vertex(mesh1.edge(first_edge).second);
  LineSegment probe{p, q};
  double smin = 0.0, smax = 0.0;
  Point pmin = p, pmax = p;
  for (const auto& [key, tag] : mesh1.boundary_tags()) {
    if (tag != FacetTag::Interface) continue;
    for (Index v : {key.first, key.second}) {
      const double s = probe.arc_length(mesh1.vertex(v));
      if (s < smin) { smin = s; pmin = mesh1.vertex(v); }
      if (s > smax) { smax = s; pmax = mesh1.vertex(v); }
    }
  }

  MortarInterface iface;
  iface.line = LineSegment{pmin, pmax};
  const double len = iface.length();
  const double check_tol = 1e-10 * len;
  const double dedup_tol = 1e-12 * len;

  const auto facets1 = collect_facets(mesh1, iface.line, check_tol, "mesh 1");
  const auto facets2 = collect_facets(mesh2, iface.line, check_tol, "mesh 2");
  MORTARFEM_THROW_IF(std::abs(facets2.front().s0 - facets1.front().s0) > check_tol ||
                         std::abs(facets2.back().s1 - facets1.back().s1) > check_tol,
                     GeometryMismatch, "build_mortar_segments: interface extents disagree");

  const auto& f0 = facets1.front().side;
  iface.normal1 = element_geometry(mesh1, f0.triangle).normals[static_cast<std::size_t>(f0.local_edge)];

  std::vector<double> breaks;
  breaks.reserve(2 * (facets1.size() + facets2.size()));
  for (const auto* fs : {&facets1, &facets2})
    for (const auto& f : *fs) {
      breaks.push_back(f.s0);
      breaks.push_back(f.s1);
    }
  std::sort(breaks.begin(), breaks.end());
  std::vector<double> merged;
  for (double b : breaks)
    if (merged.empty() || b - merged.back() > dedup_tol) merged.push_back(b);
  // pin the ends to the exact extent of side 1
  merged.front() = facets1.front().s0;
  merged.back() = facets1.back().s1;

  iface.segments.reserve(merged.size() - 1);
  for (std::size_t k = 0; k + 1 < merged.size(); ++k) {
    const double mid = 0.5 * (merged[k] + merged[k + 1]);
    const auto& a = facet_containing(facets1, mid);
    const auto& b = facet_containing(facets2, mid);
    MortarSegment seg;
    seg.s0 = merged[k];
    seg.s1 = merged[k + 1];
    seg.sides = {a.side, b.side};
    seg.h_E = a.side.facet_length();
    iface.segments.push_back(seg);
  }
  return iface;
}

Point trace_reference_point(const MortarInterface& iface, const MortarSegment& seg, Side side,
                            const FeSpace& space, double s) {
  const MortarSide& ms = seg.side(side);
  const double tol = 1e-10 * iface.length();
  MORTARFEM_THROW_IF(s < ms.facet_s0 - tol || s > ms.facet_s1 + tol, InternalError,
                     "interface: trace point outside its owning facet");
  return space.element(ms.triangle).to_reference(iface.point(s));
}

double eval_trace(const MortarInterface& iface, const MortarSegment& seg, Side side,
                  const FeSpace& space, CoeffView coeffs, double s) {
  const Point xi = trace_reference_point(iface, seg, side, space, s);
  return space.value(coeffs, seg.side(side).triangle, xi);
}

double eval_normal_deriv_trace(const MortarInterface& iface, const MortarSegment& seg, Side side,
                               const FeSpace& space, CoeffView coeffs, double s,
                               Side normal_of) {
  const Point xi = trace_reference_point(iface, seg, side, space, s);
  return space.gradient(coeffs, seg.side(side).triangle, xi).dot(iface.normal(normal_of));
}

TraceBasis eval_trace_basis(const MortarInterface& iface, const MortarSegment& seg, Side side,
                            const FeSpace& space, double s) {
  const Index t = seg.side(side).triangle;
  const Point xi = trace_reference_point(iface, seg, side, space, s);
  const auto& geo = space.element(t);
  const Point n = iface.normal(side);
  TraceBasis tb;
  tb.dofs = space.dofs.cell(t);
  tb.values = eval_basis(space.degree(), xi);
  const auto grads = eval_basis_grad(space.degree(), xi);
  for (std::size_t k = 0; k < tb.dofs.size(); ++k)
    tb.normal_derivs[k] = geo.physical_gradient(grads[k]).dot(n);
  return tb;
}

}  // namespace mortarfem
