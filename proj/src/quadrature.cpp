// SPDX-FileCopyrightText: Copyright (c) 2026 The mortarfem Authors
// SPDX-License-Identifier: Apache-2.0

#include <mortarfem/quadrature.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace mortarfem {

namespace {

// Symmetric orbits in barycentric coordinates (l0, l1, l2); the reference
// point is (l1, l2).
void add_centroid(TriangleRule& r, double w) {
  r.points.emplace_back(1.0 / 3.0, 1.0 / 3.0);
  r.weights.push_back(w);
}

void add_orbit3(TriangleRule& r, double a, double w) {
  const double b = 1.0 - 2.0 * a;
  for (const auto& [p, q] : std::array<std::array<double, 2>, 3>{{{a, a}, {b, a}, {a, b}}}) {
    r.points.emplace_back(p, q);
    r.weights.push_back(w);
  }
}

void add_orbit6(TriangleRule& r, double a, double b, double w) {
  const double c = 1.0 - a - b;
  for (const auto& [p, q] :
       std::array<std::array<double, 2>, 6>{{{b, c}, {c, b}, {a, c}, {c, a}, {a, b}, {b, a}}}) {
    r.points.emplace_back(p, q);
    r.weights.push_back(w);
  }
}

// Dunavant rules of degree 1, 2, 4, 5, 6 (degree 3 reuses the degree 4 rule,
// whose weights are all positive).
std::array<TriangleRule, 7> make_triangle_rules() {
  std::array<TriangleRule, 7> rules;

  TriangleRule r1;
  add_centroid(r1, 0.5);
  r1.degree = 1;

  TriangleRule r2;
  add_orbit3(r2, 1.0 / 6.0, 1.0 / 6.0);
  r2.degree = 2;

  TriangleRule r4;
  add_orbit3(r4, 0.44594849091596488632, 0.11169079483900573285);
  add_orbit3(r4, 0.09157621350977074346, 0.054975871827660933819);
  r4.degree = 4;

  TriangleRule r5;
  add_centroid(r5, 0.1125);
  add_orbit3(r5, 0.47014206410511508977, 0.066197076394253090369);
  add_orbit3(r5, 0.1012865073234563388, 0.062969590272413576298);
  r5.degree = 5;

  TriangleRule r6;
  add_orbit3(r6, 0.24928674517091042129, 0.058393137863189683013);
  add_orbit3(r6, 0.06308901449150222834, 0.02542245318510340846);
  add_orbit6(r6, 0.31035245103378440542, 0.053145049844816947353, 0.041425537809186787597);
  r6.degree = 6;

  rules[0] = r1;
  rules[1] = r1;
  rules[2] = r2;
  rules[3] = r4;
  rules[4] = r4;
  rules[5] = r5;
  rules[6] = r6;
  return rules;
}

// Gauss-Legendre nodes on [-1,1] by Newton iteration on P_n, mapped to [0,1].
SegmentRule make_gauss(int n) {
  SegmentRule rule;
  rule.degree = 2 * n - 1;
  for (int i = 1; i <= n; ++i) {
    double x = std::cos(std::numbers::pi * (i - 0.25) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double pn = n == 1 ? x : p1;
      const double pnm1 = n == 1 ? 1.0 : p0;
      dp = n * (x * pn - pnm1) / (x * x - 1.0);
      const double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute the derivative at the converged node
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n == 1 ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.points.push_back(0.5 * (1.0 - x));
    rule.weights.push_back(0.5 * w);
  }
  return rule;
}

std::array<SegmentRule, 5> make_gauss_rules() {
  return {make_gauss(1), make_gauss(2), make_gauss(3), make_gauss(4), make_gauss(5)};
}

}  // namespace

const TriangleRule& triangle_rule(int degree) {
  static const std::array<TriangleRule, 7> rules = make_triangle_rules();
  MORTARFEM_THROW_IF(degree < 0 || degree > 6, InvalidArgument,
                     "triangle_rule: unsupported exactness degree " + std::to_string(degree));
  return rules[static_cast<std::size_t>(degree)];
}

const SegmentRule& gauss_1d(int degree) {
  static const std::array<SegmentRule, 5> rules = make_gauss_rules();
  MORTARFEM_THROW_IF(degree < 0 || degree > 9, InvalidArgument,
                     "gauss_1d: unsupported exactness degree " + std::to_string(degree));
  const int n = std::max(1, (degree + 2) / 2);
  return rules[static_cast<std::size_t>(n - 1)];
}

}  // namespace mortarfem
