// SPDX-FileCopyrightText: Copyright (c) 2026 The mortarfem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <mortarfem/coupling.hpp>
#include <mortarfem/interface.hpp>
#include <mortarfem/space.hpp>

#include <array>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace mortarfem {

/// Residual estimator split per triangle of both subdomains.
struct EstimatorBreakdown {
  /// eta_K^2 per triangle, indexed by subdomain.
  std::array<std::vector<double>, 2> eta2;
  /// Interface indicator per mortar segment.
  std::vector<double> interface_terms;
  double total = 0.0;
  /// Sum of the interface indicators (squared quantity, like eta_K^2).
  double interface_part = 0.0;

  double total_squared() const { return total * total; }
};

/// h_K^2 ||f + lap(u_h)||^2_K per triangle.
std::vector<double> element_residual(const FeSpace& space, CoeffView coeffs,
                                     const ScalarFunction& f);

/// h_e ||[du_h/dn]||^2_e per mesh edge; zero on boundary and interface facets.
std::vector<double> interior_edge_jumps(const FeSpace& space, CoeffView coeffs);

/// Value and normal derivative (against the side's own outward normal) of a
/// function on one side of the interface at arc length s.
using TraceSampler = std::function<std::pair<double, double>(const MortarSegment&, double s)>;

/// Penalty interface indicator per segment, both sides i = 1, 2:
///   sum_i h_E ||du_i/dn_i + (u_i - u_j)/eps||^2.
std::vector<double> penalty_interface_residual(const MortarInterface& iface, const TraceSampler& side1,
                                               const TraceSampler& side2, const StabParam& stab,
                                               int quadrature_degree);

std::vector<double> interface_estimator_penalty(const MortarInterface& iface, const FeSpace& space1,
                                                const FeSpace& space2, CoeffView coeffs1,
                                                CoeffView coeffs2, const StabParam& stab);

struct NitscheInterfaceTerms {
  /// h_E ||du1/dn1 + du2/dn2||^2
  double flux = 0.0;
  /// h_E^w ||u1 - u2||^2
  double jump = 0.0;
};

std::vector<NitscheInterfaceTerms> interface_estimator_nitsche(
    const MortarInterface& iface, const FeSpace& space1, const FeSpace& space2,
    CoeffView coeffs1, CoeffView coeffs2, double jump_exponent = -1.0);

/// Full estimator. Each segment's indicator is split evenly between the
/// side-1 and side-2 triangles that own it; interior edge terms are split
/// evenly between their two triangles.
EstimatorBreakdown estimate(const MortarInterface& iface, const FeSpace& space1,
                            const FeSpace& space2, CoeffView coeffs1,
                            CoeffView coeffs2, const ScalarFunction& f1,
                            const ScalarFunction& f2, const StabParam& stab,
                            const MethodConfig& config);

/// Smallest greedy set (largest first, ties by index) carrying at least
/// theta of sum(eta2).
std::vector<Index> dorfler_mark(std::span<const double> eta2, double theta);

}  // namespace mortarfem
