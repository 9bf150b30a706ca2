// SPDX-FileCopyrightText: Copyright (c) 2026 The mortarfem Authors
// SPDX-License-Identifier: Apache-2.0

#include <mortarfem/estimator.hpp>
#include <mortarfem/quadrature.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mortarfem {

std::vector<double> element_residual(const FeSpace& space, CoeffView coeffs,
                                     const ScalarFunction& f) {
  const auto& rule = triangle_rule(2 * space.degree() + 2);
  std::vector<double> out(static_cast<std::size_t>(space.mesh.n_triangles()), 0.0);
  for (Index t = 0; t < space.mesh.n_triangles(); ++t) {
    const auto& geo = space.element(t);
    const double lap = space.laplacian(coeffs, t);
    double sum = 0.0;
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const double r = f(geo.to_physical(rule.points[q])) + lap;
      sum += rule.weights[q] * r * r;
    }
    const double h = space.mesh.triangle_diameter(t);
    out[static_cast<std::size_t>(t)] = h * h * 2.0 * geo.area * sum;
  }
  return out;
}

std::vector<double> interior_edge_jumps(const FeSpace& space, CoeffView coeffs) {
  const Mesh& mesh = space.mesh;
  const auto& rule = gauss_1d(2 * space.degree());
  std::vector<double> out(static_cast<std::size_t>(mesh.n_edges()), 0.0);
  for (Index e = 0; e < mesh.n_edges(); ++e) {
    const auto& adj = mesh.edge_triangles(e);
    if (adj[1] < 0) continue;
    const auto& [a, b] = mesh.edge(e);
    const Point pa = mesh.vertex(a);
    const Point pb = mesh.vertex(b);
    const double len = (pb - pa).norm();
    const Point n = Point((pb - pa).y(), -(pb - pa).x()) / len;
    const auto& g0 = space.element(adj[0]);
    const auto& g1 = space.element(adj[1]);
    double sum = 0.0;
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const Point x = pa + rule.points[q] * (pb - pa);
      const Point d = space.gradient(coeffs, adj[0], g0.to_reference(x)) -
                      space.gradient(coeffs, adj[1], g1.to_reference(x));
      const double jump = d.dot(n);
      sum += rule.weights[q] * jump * jump;
    }
    out[static_cast<std::size_t>(e)] = len * len * sum;
  }
  return out;
}

std::vector<double> penalty_interface_residual(const MortarInterface& iface, const TraceSampler& side1,
                                               const TraceSampler& side2, const StabParam& stab,
                                               int quadrature_degree) {
  const auto& rule = gauss_1d(quadrature_degree);
  std::vector<double> out(iface.segments.size(), 0.0);
  for (std::size_t k = 0; k < iface.segments.size(); ++k) {
    const auto& seg = iface.segments[k];
    const double inv_eps = 1.0 / stab.epsilon[k];
    double sum = 0.0;
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const double s = seg.s0 + rule.points[q] * seg.length();
      const auto [u1, dn1] = side1(seg, s);
      const auto [u2, dn2] = side2(seg, s);
      const double r1 = dn1 + inv_eps * (u1 - u2);
      const double r2 = dn2 + inv_eps * (u2 - u1);
      sum += rule.weights[q] * (r1 * r1 + r2 * r2);
    }
    out[k] = seg.h_E * seg.length() * sum;
  }
  return out;
}

namespace {

TraceSampler fe_sampler(const MortarInterface& iface, Side side, const FeSpace& space,
                        CoeffView coeffs) {
  return [&iface, side, &space, coeffs](const MortarSegment& seg, double s) {
    const Point xi = trace_reference_point(iface, seg, side, space, s);
    const Index t = seg.side(side).triangle;
    return std::pair{space.value(coeffs, t, xi), space.gradient(coeffs, t, xi).dot(iface.normal(side))};
  };
}

}  // namespace

std::vector<double> interface_estimator_penalty(const MortarInterface& iface, const FeSpace& space1,
                                                const FeSpace& space2, CoeffView coeffs1,
                                                CoeffView coeffs2, const StabParam& stab) {
  const int p = std::max(space1.degree(), space2.degree());
  return penalty_interface_residual(iface, fe_sampler(iface, Side::One, space1, coeffs1),
                                    fe_sampler(iface, Side::Two, space2, coeffs2), stab, 2 * p + 1);
}

std::vector<NitscheInterfaceTerms> interface_estimator_nitsche(
    const MortarInterface& iface, const FeSpace& space1, const FeSpace& space2,
    CoeffView coeffs1, CoeffView coeffs2, double jump_exponent) {
  const int p = std::max(space1.degree(), space2.degree());
  const auto& rule = gauss_1d(2 * p + 1);
  const auto s1 = fe_sampler(iface, Side::One, space1, coeffs1);
  const auto s2 = fe_sampler(iface, Side::Two, space2, coeffs2);
  std::vector<NitscheInterfaceTerms> out(iface.segments.size());
  for (std::size_t k = 0; k < iface.segments.size(); ++k) {
    const auto& seg = iface.segments[k];
    double flux = 0.0, jump = 0.0;
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const double s = seg.s0 + rule.points[q] * seg.length();
      const auto [u1, dn1] = s1(seg, s);
      const auto [u2, dn2] = s2(seg, s);
      flux += rule.weights[q] * (dn1 + dn2) * (dn1 + dn2);
      jump += rule.weights[q] * (u1 - u2) * (u1 - u2);
    }
    out[k].flux = seg.h_E * seg.length() * flux;
    out[k].jump = std::pow(seg.h_E, jump_exponent) * seg.length() * jump;
  }
  return out;
}

EstimatorBreakdown estimate(const MortarInterface& iface, const FeSpace& space1,
                            const FeSpace& space2, CoeffView coeffs1,
                            CoeffView coeffs2, const ScalarFunction& f1,
                            const ScalarFunction& f2, const StabParam& stab,
                            const MethodConfig& config) {
  EstimatorBreakdown out;
  const std::array<const FeSpace*, 2> spaces{&space1, &space2};
  const std::array<CoeffView, 2> coeffs{coeffs1, coeffs2};
  const std::array<const ScalarFunction*, 2> rhs{&f1, &f2};

  for (std::size_t i = 0; i < 2; ++i) {
    const FeSpace& sp = *spaces[i];
    out.eta2[i] = element_residual(sp, coeffs[i], *rhs[i]);
    const auto jumps = interior_edge_jumps(sp, coeffs[i]);
    for (Index e = 0; e < sp.mesh.n_edges(); ++e) {
      const double half = 0.5 * jumps[static_cast<std::size_t>(e)];
      if (half == 0.0) continue;
      for (Index t : sp.mesh.edge_triangles(e)) out.eta2[i][static_cast<std::size_t>(t)] += half;
    }
  }

  if (config.is_nitsche()) {
    const auto terms = interface_estimator_nitsche(iface, space1, space2, coeffs1, coeffs2,
                                                   config.nitsche_jump_exponent);
    out.interface_terms.reserve(terms.size());
    for (const auto& t : terms) out.interface_terms.push_back(t.flux + t.jump);
  } else {
    out.interface_terms = interface_estimator_penalty(iface, space1, space2, coeffs1, coeffs2, stab);
  }

  for (std::size_t k = 0; k < iface.segments.size(); ++k) {
    const auto& seg = iface.segments[k];
    const double half = 0.5 * out.interface_terms[k];
    out.eta2[0][static_cast<std::size_t>(seg.side(Side::One).triangle)] += half;
    out.eta2[1][static_cast<std::size_t>(seg.side(Side::Two).triangle)] += half;
    out.interface_part += out.interface_terms[k];
  }

  double sum = 0.0;
  for (const auto& v : out.eta2) sum = std::accumulate(v.begin(), v.end(), sum);
  out.total = std::sqrt(sum);
  return out;
}

std::vector<Index> dorfler_mark(std::span<const double> eta2, double theta) {
  MORTARFEM_THROW_IF(!(theta > 0.0 && theta <= 1.0), InvalidArgument,
                     "dorfler_mark: theta must lie in (0, 1]");
  std::vector<Index> order(eta2.size());
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    return eta2[static_cast<std::size_t>(a)] > eta2[static_cast<std::size_t>(b)];
  });
  const double total = std::accumulate(eta2.begin(), eta2.end(), 0.0);
  const double target = theta * total * (1.0 - 1e-12);
  std::vector<Index> marked;
  double acc = 0.0;
  for (Index i : order) {
    if (acc >= target && !marked.empty()) break;
    if (total == 0.0) break;
    marked.push_back(i);
    acc += eta2[static_cast<std::size_t>(i)];
  }
  if (theta == 1.0) {
    // every element, including zero indicators
    marked = order;
  }
  std::sort(marked.begin(), marked.end());
  return marked;
}

}  // namespace mortarfem
