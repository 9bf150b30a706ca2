// SPDX-FileCopyrightText: Copyright (c) 2026 The mortarfem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <mortarfem/common.hpp>
#include <mortarfem/mesh.hpp>
#include <mortarfem/space.hpp>

#include <array>
#include <span>
#include <vector>

namespace mortarfem {

enum class Side : int { One = 0, Two = 1 };

inline std::size_t side_index(Side s) { return static_cast<std::size_t>(s); }

/// The facet of one mesh that contains a mortar segment.
struct MortarSide {
  Index triangle = -1;
  int local_edge = -1;
  /// Arc-length extent of the owning facet.
  double facet_s0 = 0.0;
  double facet_s1 = 0.0;

  double facet_length() const { return facet_s1 - facet_s0; }
};

/// One piece of the merged interface partition.
struct MortarSegment {
  double s0 = 0.0;
  double s1 = 0.0;
  std::array<MortarSide, 2> sides;
  /// Length of the side-1 facet containing this segment.
  double h_E = 0.0;

  double length() const { return s1 - s0; }
  const MortarSide& side(Side s) const { return sides[side_index(s)]; }
};

/// Mortar decomposition of the straight interface shared by two meshes.
struct MortarInterface {
  LineSegment line;
  /// Outward unit normal of subdomain 1 on the interface.
  Point normal1 = Point::Zero();
  std::vector<MortarSegment> segments;

  double length() const { return line.length(); }
  Point point(double s) const { return line.at(s); }
  Point normal(Side side) const { return side == Side::One ? normal1 : Point(-normal1); }
};

/// Merged-breakpoint partition of the interface. Throws GeometryMismatch if
/// the Interface facets of the two meshes are not collinear or do not cover
/// the same extent.
MortarInterface build_mortar_segments(const Mesh& mesh1, const Mesh& mesh2);

/// Reference coordinates, in the owning triangle of `side`, of the interface
/// point at arc length `s`. Throws InternalError if `s` is outside the owning
/// facet.
Point trace_reference_point(const MortarInterface& iface, const MortarSegment& seg, Side side,
                            const FeSpace& space, double s);

/// Value of the FE function of `side` at arc length `s`.
double eval_trace(const MortarInterface& iface, const MortarSegment& seg, Side side,
                  const FeSpace& space, CoeffView coeffs, double s);

/// Normal derivative of the FE function of `side`, taken in its owning
/// element, against the outward normal of subdomain `normal_of`.
double eval_normal_deriv_trace(const MortarInterface& iface, const MortarSegment& seg, Side side,
                               const FeSpace& space, CoeffView coeffs, double s,
                               Side normal_of);

/// Shape functions of the owning element of `side` at an interface point,
/// with normal derivatives against that side's own outward normal.
struct TraceBasis {
  std::span<const Index> dofs;
  BasisValues values{};
  std::array<double, 6> normal_derivs{};
};

TraceBasis eval_trace_basis(const MortarInterface& iface, const MortarSegment& seg, Side side,
                            const FeSpace& space, double s);

}  // namespace mortarfem
