// SPDX-FileCopyrightText: Copyright (c) 2026 The mortarfem Authors
// SPDX-License-Identifier: Apache-2.0

#include "test_support.hpp"

#include <mortarfem/experiments.hpp>
#include <mortarfem/solver.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace mortarfem;

namespace {

constexpr double kPi = std::numbers::pi;

double fd_laplacian(const ScalarFunction& u, const Point& x, double h = 1e-4) {
  return (u(x + Point(h, 0)) + u(x - Point(h, 0)) + u(x + Point(0, h)) + u(x - Point(0, h)) - 4 * u(x)) / (h * h);
}

Point fd_gradient(const ScalarFunction& u, const Point& x, double h = 1e-6) {
  return Point(u(x + Point(h, 0)) - u(x - Point(h, 0)), u(x + Point(0, h)) - u(x - Point(0, h))) / (2 * h);
}

MethodConfig penalty_config(std::optional<double> eps = std::nullopt) {
  MethodConfig c;
  c.method = Method::Penalty;
  c.fixed_epsilon = eps;
  return c;
}

std::vector<StudyRecord> records_from(std::vector<std::pair<double, double>> h_err) {
  std::vector<StudyRecord> out;
  for (const auto& [h, e] : h_err) {
    StudyRecord r;
    r.h_max = h;
    r.n_dofs = static_cast<Index>(std::lround(1.0 / (h * h)));
    r.energy_error = e;
    out.push_back(r);
  }
  return out;
}

}  // namespace

TEST(ProblemSmooth, PointValues) {
  const Problem p = problem_smooth();
  EXPECT_NEAR(p.exact_u[0](Point(1, 0.5)), 0.5, 1e-15);
  const Point g = p.exact_grad[0](Point(1, 0.5));
  EXPECT_NEAR(g.x(), 0.5, 1e-15);
  EXPECT_NEAR(g.y(), 1.0, 1e-15);
  for (double t = 0; t <= 1.0; t += 0.125) {
    EXPECT_NEAR(p.exact_u[0](Point(0, t)), 0.0, 1e-15);
    EXPECT_NEAR(p.exact_u[1](Point(2, t)), 0.0, 1e-15);
    EXPECT_NEAR(p.exact_u[0](Point(t, 0)), 0.0, 1e-15);
    EXPECT_NEAR(p.exact_u[1](Point(1 + t, 1)), 0.0, 1e-15);
  }
}

TEST(ProblemSmooth, LoadMatchesFiniteDifferenceLaplacian) {
  const Problem p = problem_smooth();
  for (int k = 0; k < 100; ++k) {
    const Point x = support::random_point(0.01, 1.99, 0.01, 0.99);
    const std::size_t i = x.x() < 1 ? 0 : 1;
    EXPECT_NEAR(p.rhs_f[i](x), -fd_laplacian(p.exact_u[i], x), 1e-4);
    EXPECT_NEAR((p.exact_grad[i](x) - fd_gradient(p.exact_u[i], x)).norm(), 0.0, 1e-8);
  }
}

TEST(ProblemLShape, CornerFunction) {
  const Problem p = problem_lshape();
  const Point bisector(std::cos(3 * kPi / 4), std::sin(3 * kPi / 4));
  EXPECT_NEAR(p.exact_u[0](bisector), 1.0, 1e-15);
  for (double t = 0.05; t <= 1.0; t += 0.05) {
    EXPECT_NEAR(p.exact_u[1](Point(t, 0)), 0.0, 1e-15);
    EXPECT_NEAR(p.exact_u[0](Point(0, -t)), 0.0, 1e-15);
  }
  for (int k = 0; k < 100; ++k) {
    Point x;
    do {
      x = support::random_point(-1, 1, -1, 1);
    } while (x.norm() <= 0.1 || (x.x() > -1e-3 && x.y() < 1e-3));
    const std::size_t i = x.x() < 0 ? 0 : 1;
    EXPECT_NEAR(p.rhs_f[i](x), 0.0, 0.0);
    EXPECT_NEAR(fd_laplacian(p.exact_u[i], x), 0.0, 1e-4);
    EXPECT_NEAR((p.exact_grad[i](x) - fd_gradient(p.exact_u[i], x)).norm(), 0.0, 1e-7);
  }
}

TEST(ProblemSpring, InterfaceCondition) {
  for (double eps : {1.0, 0.1, 0.01, 0.001}) {
    const Problem p = problem_spring(eps);
    for (double y : {0.1, 0.37, 0.5, 0.9}) {
      const Point x(1, y);
      const double u1 = p.exact_u[0](x), u2 = p.exact_u[1](x);
      const double dn1 = p.exact_grad[0](x).x(), dn2 = -p.exact_grad[1](x).x();
      EXPECT_NEAR(dn1 + (u1 - u2) / eps, 0.0, 1e-12);
      EXPECT_NEAR(dn2 + (u2 - u1) / eps, 0.0, 1e-12);
      // jump is proportional to eps with unit flux profile
      EXPECT_NEAR((u1 - u2) / (eps * std::sin(kPi * y)), -1.0, 1e-12);
    }
    for (int k = 0; k < 20; ++k) {
      const Point x = support::random_point(0.01, 1.99, 0.01, 0.99);
      const std::size_t i = x.x() < 1 ? 0 : 1;
      EXPECT_NEAR(p.rhs_f[i](x), -fd_laplacian(p.exact_u[i], x), 1e-4 * (1 + std::abs(p.rhs_f[i](x))));
    }
    EXPECT_NEAR(p.exact_u[0](Point(0, 0.3)), 0.0, 1e-15);
    EXPECT_NEAR(p.exact_u[1](Point(2, 0.3)), 0.0, 1e-14);
  }
  EXPECT_THROW(problem_spring(0.0), InvalidArgument);
}

TEST(ProblemSpring, PenaltySolutionConvergesLinearly) {
  const double eps0 = 0.05;
  const auto records = run_uniform_study(problem_spring(eps0), penalty_config(eps0), 5);
  const double slope = convergence_rate(records, RateVariable::MeshSize).slope_last3;
  EXPECT_GT(slope, 0.9);
  EXPECT_LT(slope, 1.15);
}

TEST(ProblemSpring, BestApproximationAgainstInterpolant) {
  const double eps0 = 0.05;
  const Problem p = problem_spring(eps0);
  auto [m1, m2] = gen_split_rect_meshes(3, 4);
  for (int level = 0; level < 4; ++level) {
    const Discretization d(p, penalty_config(eps0), m1, m2);
    const Eigen::VectorXd u = solve_spd(d.system);
    const std::vector<double> w(d.iface.segments.size(), 1.0 / eps0);
    const double fe = energy_error(d.iface, d.space1, d.space2, d.side1(u), d.side2(u), p, w).total();
    const auto i1 = interpolate(d.space1.dofs, p.exact_u[0]), i2 = interpolate(d.space2.dofs, p.exact_u[1]);
    const double interp = energy_error(d.iface, d.space1, d.space2, i1, i2, p, w).total();
    EXPECT_LE(fe, 5.0 * interp) << "level " << level;
    m1 = uniform_refine(m1);
    m2 = uniform_refine(m2);
  }
}

TEST(EnergyError, ExactCoefficientsGiveZero) {
  const Problem p = problem_patch_quadratic();
  const auto [m1, m2] = gen_split_rect_meshes(3, 4);
  const FeSpace s1(m1, 2), s2(m2, 2);
  const MortarInterface iface = build_mortar_segments(s1.mesh, s2.mesh);
  const auto c1 = interpolate(s1.dofs, p.exact_u[0]), c2 = interpolate(s2.dofs, p.exact_u[1]);
  const EnergyError e = energy_error(iface, s1, s2, c1, c2, p);
  EXPECT_NEAR(e.total(), 0.0, 1e-12);
}

TEST(EnergyError, PureGradientPart) {
  // error e = x on subdomain 1 only
  Problem p = problem_patch_linear();
  p.exact_u = {[](const Point& x) { return x.x(); }, [](const Point&) { return 0.0; }};
  p.exact_grad = {[](const Point&) { return Point(1, 0); }, [](const Point&) { return Point(0, 0); }};
  const auto [m1, m2] = gen_split_rect_meshes(3, 4);
  const FeSpace s1(m1, 1), s2(m2, 1);
  const MortarInterface iface = build_mortar_segments(s1.mesh, s2.mesh);
  const Eigen::VectorXd c1 = Eigen::VectorXd::Zero(s1.n_dofs()), c2 = Eigen::VectorXd::Zero(s2.n_dofs());
  const EnergyError e = energy_error(iface, s1, s2, c1, c2, p);
  EXPECT_NEAR(e.gradient_squared, 1.0, 1e-13);
  // jump of e across x = 1 is 1, weighted by 1/h_E = 3
  EXPECT_NEAR(e.jump_squared, 3.0, 1e-12);
  const std::vector<double> w(iface.segments.size(), 2.0);
  EXPECT_NEAR(energy_error(iface, s1, s2, c1, c2, p, w).jump_squared, 2.0, 1e-12);
  EXPECT_THROW(energy_error(iface, s1, s2, c1, c2, p, std::vector<double>{1.0}), InvalidArgument);
}

TEST(EnergyError, InterpolantJumpScalesLikeHToPPlusHalf) {
  const Problem p = problem_smooth();
  for (int deg : {1, 2}) {
    auto [m1, m2] = gen_split_rect_meshes(3, 4);
    std::vector<double> hs, jumps;
    for (int level = 0; level < 4; ++level) {
      const FeSpace s1(m1, deg), s2(m2, deg);
      const MortarInterface iface = build_mortar_segments(s1.mesh, s2.mesh);
      const auto c1 = interpolate(s1.dofs, p.exact_u[0]), c2 = interpolate(s2.dofs, p.exact_u[1]);
      hs.push_back(std::log(std::max(m1.h_max(), m2.h_max())));
      jumps.push_back(std::log(std::sqrt(energy_error(iface, s1, s2, c1, c2, p).jump_squared)));
      m1 = uniform_refine(m1);
      m2 = uniform_refine(m2);
    }
    const double slope = least_squares_slope(std::span(hs).last(3), std::span(jumps).last(3));
    EXPECT_NEAR(slope, deg + 0.5, 0.25) << "p=" << deg;
  }
}

TEST(ConvergenceRate, Examples) {
  EXPECT_NEAR(convergence_rate(records_from({{0.2, 0.1}, {0.1, 0.05}}), RateVariable::MeshSize).steps[0], 1.0, 1e-14);
  EXPECT_NEAR(
      convergence_rate(records_from({{0.2, 0.1}, {0.1, 0.1 / std::sqrt(2.0)}}), RateVariable::MeshSize).steps[0], 0.5,
      1e-14);
  EXPECT_NEAR(convergence_rate(records_from({{0.2, 0.1}, {0.1, 0.1}}), RateVariable::MeshSize).steps[0], 0.0, 1e-14);
  EXPECT_THROW(convergence_rate(records_from({{0.2, 0.1}}), RateVariable::MeshSize), InvalidArgument);
}

TEST(ConvergenceRate, DofsSlopeIsSigned) {
  auto rec = records_from({{0.5, 0.5}, {0.25, 0.25}, {0.125, 0.125}, {0.0625, 0.0625}});
  const RateSummary r = convergence_rate(rec, RateVariable::Dofs);
  for (double s : r.steps) EXPECT_NEAR(s, -0.5, 1e-14);
  EXPECT_NEAR(r.slope_last3, -0.5, 1e-14);
  EXPECT_NEAR(convergence_rate(rec, RateVariable::MeshSize).slope_last3, 1.0, 1e-12);
}

TEST(LeastSquaresSlope, ExactLine) {
  const std::vector<double> x{0, 1, 2}, y{1, 3, 5};
  EXPECT_NEAR(least_squares_slope(x, y), 2.0, 1e-15);
  EXPECT_THROW(least_squares_slope(std::vector<double>{1}, std::vector<double>{1}), InvalidArgument);
}

TEST(Patch, NitscheReproducesPolynomials) {
  for (auto [degree, problem] : {std::pair{1, problem_patch_linear()}, {2, problem_patch_quadratic()}})
    for (Method m : {Method::NitscheOneSided, Method::NitscheAverage}) {
      MethodConfig c;
      c.method = m;
      c.degree = degree;
      const auto [m1, m2] = gen_split_rect_meshes(3, 4);
      const Discretization d(problem, c, m1, m2);
      const Eigen::VectorXd u = solve_spd(d.system);
      EXPECT_LT(energy_error(d.iface, d.space1, d.space2, d.side1(u), d.side2(u), problem).total(), 1e-10)
          << to_string(m) << " p=" << degree;
    }
}

TEST(Patch, PenaltyErrorIsLinearInEpsilon) {
  const Problem p = problem_patch_linear();
  const auto [m1, m2] = gen_split_rect_meshes(3, 4);
  double prev = 0.0;
  // pre-asymptotic above eps ~ 1e-4 on this mesh pair
  for (double eps : {1e-5, 1e-6, 1e-7}) {
    const Discretization d(p, penalty_config(eps), m1, m2);
    const Eigen::VectorXd u = solve_spd(d.system);
    const double e = energy_error(d.iface, d.space1, d.space2, d.side1(u), d.side2(u), p).total();
    EXPECT_GT(e, 0.0);
    if (prev > 0.0) {
      EXPECT_NEAR(prev / e, 10.0, 2.0) << "eps=" << eps;
    }
    prev = e;
  }
}

TEST(UniformStudy, DofsGrowByFourAndRecordsAreValid) {
  StudyOptions opt;
  int calls = 0;
  opt.observer = [&](const Discretization&, const Eigen::VectorXd&) { ++calls; };
  const auto r = run_uniform_study(problem_smooth(), MethodConfig{}, 4, opt);
  ASSERT_EQ(r.size(), 4u);
  EXPECT_EQ(calls, 4);
  for (std::size_t k = 0; k < r.size(); ++k) {
    EXPECT_EQ(r[k].level, static_cast<int>(k));
    EXPECT_GE(r[k].energy_error, 0.0);
    EXPECT_GT(r[k].estimator_total, 0.0);
    if (k > 0) {
      EXPECT_GT(r[k].n_dofs, r[k - 1].n_dofs);
      EXPECT_NEAR(static_cast<double>(r[k].n_dofs) / static_cast<double>(r[k - 1].n_dofs), 4.0, 1.0);
      EXPECT_NEAR(r[k].h_max / r[k - 1].h_max, 0.5, 1e-12);
    }
  }
  EXPECT_THROW(run_uniform_study(problem_smooth(), MethodConfig{}, 1), InvalidArgument);
}

TEST(AdaptiveStudy, StopsAfterExceedingBudget) {
  const auto r = run_adaptive_study(problem_smooth(), MethodConfig{}, 0.5, 600);
  ASSERT_GE(r.size(), 2u);
  EXPECT_GT(r.back().n_dofs, 600);
  for (std::size_t k = 0; k + 1 < r.size(); ++k) {
    EXPECT_LE(r[k].n_dofs, 600);
    EXPECT_GT(r[k + 1].n_dofs, r[k].n_dofs);
    EXPECT_TRUE(r[k].mean_marked_distance.has_value());
  }
  EXPECT_THROW(run_adaptive_study(problem_smooth(), MethodConfig{}, 0.0, 100), InvalidArgument);
}

TEST(AdaptiveStudy, FullMarkingRefinesEveryTriangle) {
  int calls = 0;
  Index prev1 = 0, prev2 = 0;
  StudyOptions opt;
  opt.observer = [&](const Discretization& d, const Eigen::VectorXd&) {
    if (calls++ > 0) {
      EXPECT_GE(d.space1.mesh.n_triangles(), 2 * prev1);
      EXPECT_GE(d.space2.mesh.n_triangles(), 2 * prev2);
    }
    prev1 = d.space1.mesh.n_triangles();
    prev2 = d.space2.mesh.n_triangles();
  };
  run_adaptive_study(problem_smooth(), MethodConfig{}, 1.0, 500, opt);
  EXPECT_GE(calls, 3);
}
