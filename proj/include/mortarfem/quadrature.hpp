// SPDX-FileCopyrightText: Copyright (c) 2026 The mortarfem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <mortarfem/common.hpp>

#include <vector>

namespace mortarfem {

/// Rule on the reference triangle (0,0),(1,0),(0,1); weights sum to 1/2.
struct TriangleRule {
  std::vector<Point> points;
  std::vector<double> weights;
  int degree = 0;

  std::size_t size() const { return weights.size(); }
};

/// Rule on [0,1]; weights sum to 1.
struct SegmentRule {
  std::vector<double> points;
  std::vector<double> weights;
  int degree = 0;

  std::size_t size() const { return weights.size(); }
};

/// Symmetric rule with positive weights, exact for total degree <= d (d <= 6).
const TriangleRule& triangle_rule(int degree);

/// Gauss-Legendre rule on [0,1] exact for degree <= d (d <= 9).
const SegmentRule& gauss_1d(int degree);

}  // namespace mortarfem
