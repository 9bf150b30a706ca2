// SPDX-FileCopyrightText: Copyright (c) 2026 The mortarfem Authors
// SPDX-License-Identifier: Apache-2.0

#include <mortarfem/experiments.hpp>
#include <mortarfem/quadrature.hpp>
#include <mortarfem/solver.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace mortarfem {

namespace {

constexpr double kPi = std::numbers::pi;

template <typename T>
std::array<T, 2> both(const T& f) {
  return {f, f};
}

}  // namespace

Problem problem_smooth() {
  // u = A(x) B(y), A = x sin(pi x/2), B = y sin(pi y)
  const auto A = [](double x) { return x * std::sin(kPi * x / 2); };
  const auto dA = [](double x) { return std::sin(kPi * x / 2) + kPi / 2 * x * std::cos(kPi * x / 2); };
  const auto d2A = [](double x) {
    return kPi * std::cos(kPi * x / 2) - kPi * kPi / 4 * x * std::sin(kPi * x / 2);
  };
  const auto B = [](double y) { return y * std::sin(kPi * y); };
  const auto dB = [](double y) { return std::sin(kPi * y) + kPi * y * std::cos(kPi * y); };
  const auto d2B = [](double y) {
    return 2 * kPi * std::cos(kPi * y) - kPi * kPi * y * std::sin(kPi * y);
  };

  Problem p;
  p.name = "smooth";
  p.geometry = split_rect_geometry();
  p.exact_u = both<ScalarFunction>([=](const Point& x) { return A(x.x()) * B(x.y()); });
  p.exact_grad = both<GradientFunction>(
      [=](const Point& x) { return Point(dA(x.x()) * B(x.y()), A(x.x()) * dB(x.y())); });
  p.rhs_f = both<ScalarFunction>(
      [=](const Point& x) { return -(d2A(x.x()) * B(x.y()) + A(x.x()) * d2B(x.y())); });
  p.dirichlet_g = p.exact_u;
  p.initial_meshes = [] { return gen_split_rect_meshes(3, 4); };
  p.focus = Point(1.0, 0.5);
  return p;
}

Problem problem_lshape() {
  const auto polar = [](const Point& x) {
    double theta = std::atan2(x.y(), x.x());
    if (theta < 0.0) theta += 2 * kPi;
    return std::pair{x.norm(), theta};
  };
  Problem p;
  p.name = "lshape";
  p.geometry = lshape_geometry();
  p.exact_u = both<ScalarFunction>([=](const Point& x) {
    const auto [r, theta] = polar(x);
    if (r == 0.0) return 0.0;
    return std::pow(r, 2.0 / 3.0) * std::sin(2.0 * theta / 3.0);
  });
  p.exact_grad = both<GradientFunction>([=](const Point& x) {
    const auto [r, theta] = polar(x);
    if (r == 0.0) return Point(0.0, 0.0);
    const double c = 2.0 / 3.0 * std::pow(r, -1.0 / 3.0);
    return Point(-c * std::sin(theta / 3.0), c * std::cos(theta / 3.0));
  });
  p.rhs_f = both<ScalarFunction>([](const Point&) { return 0.0; });
  p.dirichlet_g = p.exact_u;
  p.initial_meshes = [] { return gen_lshape_meshes(2, 3); };
  p.focus = Point(0.0, 0.0);
  return p;
}

Problem problem_spring(double epsilon0) {
  MORTARFEM_THROW_IF(!(epsilon0 > 0.0), InvalidArgument, "problem_spring: epsilon0 must be positive");
  const double e = epsilon0;
  // u_i = g_i(x) sin(pi y) with g1'(1) = g2'(1) = 1 and g1(1) - g2(1) = -e.
  const auto w = [](double x) { return std::sin(kPi * x / 2); };
  const auto dw = [](double x) { return kPi / 2 * std::cos(kPi * x / 2); };
  const auto d2w = [](double x) { return -kPi * kPi / 4 * std::sin(kPi * x / 2); };
  const auto g1 = [=](double x) { return w(x) + x; };
  const auto dg1 = [=](double x) { return dw(x) + 1.0; };
  const auto d2g1 = [=](double x) { return d2w(x); };
  const auto g2 = [=](double x) { return w(x) + (3 + 2 * e) * (2 - x) - (2 + e) * (2 - x) * (2 - x); };
  const auto dg2 = [=](double x) { return dw(x) - (3 + 2 * e) + 2 * (2 + e) * (2 - x); };
  const auto d2g2 = [=](double x) { return d2w(x) - 2 * (2 + e); };

  const auto make = [](auto g, auto dg, auto d2g) {
    return std::tuple{
        ScalarFunction([=](const Point& x) { return g(x.x()) * std::sin(kPi * x.y()); }),
        GradientFunction([=](const Point& x) {
          return Point(dg(x.x()) * std::sin(kPi * x.y()), kPi * g(x.x()) * std::cos(kPi * x.y()));
        }),
        ScalarFunction([=](const Point& x) {
          return (-d2g(x.x()) + kPi * kPi * g(x.x())) * std::sin(kPi * x.y());
        })};
  };
  auto [u1, grad1, f1] = make(g1, dg1, d2g1);
  auto [u2, grad2, f2] = make(g2, dg2, d2g2);

  Problem p;
  p.name = "spring";
  p.geometry = split_rect_geometry();
  p.exact_u = {u1, u2};
  p.exact_grad = {grad1, grad2};
  p.rhs_f = {f1, f2};
  p.dirichlet_g = p.exact_u;
  p.initial_meshes = [] { return gen_split_rect_meshes(3, 4); };
  p.focus = Point(1.0, 0.5);
  return p;
}

Problem problem_patch_linear() {
  Problem p;
  p.name = "patch-linear";
  p.geometry = split_rect_geometry();
  p.exact_u = both<ScalarFunction>([](const Point& x) { return 1.0 + 2.0 * x.x() - 3.0 * x.y(); });
  p.exact_grad = both<GradientFunction>([](const Point&) { return Point(2.0, -3.0); });
  p.rhs_f = both<ScalarFunction>([](const Point&) { return 0.0; });
  p.dirichlet_g = p.exact_u;
  p.initial_meshes = [] { return gen_split_rect_meshes(3, 4); };
  p.focus = Point(1.0, 0.5);
  return p;
}

Problem problem_patch_quadratic() {
  Problem p;
  p.name = "patch-quadratic";
  p.geometry = split_rect_geometry();
  p.exact_u = both<ScalarFunction>(
      [](const Point& x) { return x.x() * x.x() + x.x() * x.y() + 2.0 * x.y() * x.y(); });
  p.exact_grad = both<GradientFunction>(
      [](const Point& x) { return Point(2.0 * x.x() + x.y(), x.x() + 4.0 * x.y()); });
  p.rhs_f = both<ScalarFunction>([](const Point&) { return -6.0; });
  p.dirichlet_g = p.exact_u;
  p.initial_meshes = [] { return gen_split_rect_meshes(3, 4); };
  p.focus = Point(1.0, 0.5);
  return p;
}

CoupledSystem assemble_problem(const Problem& problem, const MethodConfig& config,
                               const FeSpace& space1, const FeSpace& space2,
                               const MortarInterface& iface, const StabParam& stab) {
  CoupledSystem sys = make_coupled_system(space1, space2, problem.rhs_f[0], problem.rhs_f[1]);
  assemble_interface(sys, iface, space1, space2, stab, config);
  sys.matrix.finalize();

  Eigen::VectorXd values = Eigen::VectorXd::Zero(sys.size());
  const std::array<const FeSpace*, 2> spaces{&space1, &space2};
  for (std::size_t i = 0; i < 2; ++i) {
    const Index offset = i == 0 ? 0 : sys.offset;
    const auto& dofs = spaces[i]->dofs;
    for (Index d = 0; d < dofs.n_dofs; ++d)
      if (dofs.is_dirichlet(d))
        values[offset + d] = problem.dirichlet_g[i](dofs.dof_coords[static_cast<std::size_t>(d)]);
  }
  return apply_dirichlet(std::move(sys), values);
}

Discretization::Discretization(const Problem& problem, const MethodConfig& config, Mesh mesh1, Mesh mesh2)
    : space1(std::move(mesh1), config.degree),
      space2(std::move(mesh2), config.degree),
      iface(build_mortar_segments(space1.mesh, space2.mesh)),
      stab(stabilization(iface, space1.mesh, config)),
      system(assemble_problem(problem, config, space1, space2, iface, stab)) {}

double EnergyError::total() const { return std::sqrt(gradient_squared + jump_squared); }

EnergyError energy_error(const MortarInterface& iface, const FeSpace& space1, const FeSpace& space2,
                         CoeffView coeffs1, CoeffView coeffs2,
                         const Problem& problem, std::span<const double> jump_weights) {
  MORTARFEM_THROW_IF(!jump_weights.empty() && jump_weights.size() != iface.segments.size(),
                     InvalidArgument, "energy_error: one jump weight per segment required");
  EnergyError err;
  const std::array<const FeSpace*, 2> spaces{&space1, &space2};
  const std::array<CoeffView, 2> coeffs{coeffs1, coeffs2};
  for (std::size_t i = 0; i < 2; ++i) {
    const FeSpace& sp = *spaces[i];
    const auto& rule = triangle_rule(2 * sp.degree() + 2);
    for (Index t = 0; t < sp.mesh.n_triangles(); ++t) {
      const auto& geo = sp.element(t);
      double sum = 0.0;
      for (std::size_t q = 0; q < rule.size(); ++q) {
        const Point d = problem.exact_grad[i](geo.to_physical(rule.points[q])) -
                        sp.gradient(coeffs[i], t, rule.points[q]);
        sum += rule.weights[q] * d.squaredNorm();
      }
      err.gradient_squared += 2.0 * geo.area * sum;
    }
  }

  const int p = std::max(space1.degree(), space2.degree());
  const auto& rule = gauss_1d(2 * p + 2);
  for (std::size_t k = 0; k < iface.segments.size(); ++k) {
    const auto& seg = iface.segments[k];
    const double weight = jump_weights.empty() ? 1.0 / seg.h_E : jump_weights[k];
    double sum = 0.0;
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const double s = seg.s0 + rule.points[q] * seg.length();
      const Point x = iface.point(s);
      const double e1 = problem.exact_u[0](x) - eval_trace(iface, seg, Side::One, space1, coeffs1, s);
      const double e2 = problem.exact_u[1](x) - eval_trace(iface, seg, Side::Two, space2, coeffs2, s);
      sum += rule.weights[q] * (e1 - e2) * (e1 - e2);
    }
    err.jump_squared += weight * seg.length() * sum;
  }
  return err;
}

double least_squares_slope(std::span<const double> x, std::span<const double> y) {
  MORTARFEM_THROW_IF(x.size() != y.size() || x.size() < 2, InvalidArgument,
                     "least_squares_slope: need at least two points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  MORTARFEM_THROW_IF(sxx == 0.0, InvalidArgument, "least_squares_slope: degenerate abscissae");
  return sxy / sxx;
}

RateSummary convergence_rate(std::span<const StudyRecord> records, RateVariable variable) {
  MORTARFEM_THROW_IF(records.size() < 2, InvalidArgument,
                     "convergence_rate: at least two records required");
  const auto abscissa = [variable](const StudyRecord& r) {
    return variable == RateVariable::MeshSize ? r.h_max : static_cast<double>(r.n_dofs);
  };
  RateSummary out;
  for (std::size_t k = 0; k + 1 < records.size(); ++k) {
    const double le = std::log(records[k].energy_error / records[k + 1].energy_error);
    const double lx = std::log(abscissa(records[k]) / abscissa(records[k + 1]));
    out.steps.push_back(le / lx);
  }
  const std::size_t first = records.size() >= 3 ? records.size() - 3 : 0;
  std::vector<double> lx, ly;
  for (std::size_t k = first; k < records.size(); ++k) {
    lx.push_back(std::log(abscissa(records[k])));
    ly.push_back(std::log(records[k].energy_error));
  }
  out.slope_last3 = least_squares_slope(lx, ly);
  return out;
}

namespace {

StudyRecord record_level(const Problem& problem, const MethodConfig& config, const Discretization& disc,
                         const Eigen::VectorXd& u, int level, const StudyOptions& options,
                         EstimatorBreakdown* breakdown_out) {
  StudyRecord rec;
  rec.level = level;
  rec.n_dofs = disc.n_dofs();
  rec.h_max = std::max(disc.space1.mesh.h_max(), disc.space2.mesh.h_max());
  rec.energy_error =
      energy_error(disc.iface, disc.space1, disc.space2, disc.side1(u), disc.side2(u), problem).total();
  EstimatorBreakdown est = estimate(disc.iface, disc.space1, disc.space2, disc.side1(u), disc.side2(u),
                                    problem.rhs_f[0], problem.rhs_f[1], disc.stab, config);
  rec.estimator_total = est.total;
  rec.interface_estimator_part = est.interface_part;
  if (options.condition) rec.condition_estimate = condition_estimate(disc.system).ratio();
  if (breakdown_out) *breakdown_out = std::move(est);
  return rec;
}

}  // namespace

std::vector<StudyRecord> run_uniform_study(const Problem& problem, const MethodConfig& config,
                                           int levels, const StudyOptions& options) {
  MORTARFEM_THROW_IF(levels < 2, InvalidArgument, "run_uniform_study: at least two levels required");
  config.validate();
  auto [mesh1, mesh2] = problem.initial_meshes();
  std::vector<StudyRecord> records;
  for (int level = 0; level < levels; ++level) {
    Discretization disc(problem, config, mesh1, mesh2);
    const Eigen::VectorXd u = solve_spd(disc.system);
    if (options.observer) options.observer(disc, u);
    records.push_back(record_level(problem, config, disc, u, level, options, nullptr));
    if (level + 1 < levels) {
      mesh1 = uniform_refine(mesh1);
      mesh2 = uniform_refine(mesh2);
    }
  }
  return records;
}

std::vector<StudyRecord> run_adaptive_study(const Problem& problem, const MethodConfig& config,
                                            double theta, Index max_dofs, const StudyOptions& options) {
  MORTARFEM_THROW_IF(!(theta > 0.0 && theta <= 1.0), InvalidArgument,
                     "run_adaptive_study: theta must lie in (0, 1]");
  config.validate();
  constexpr int kMaxIterations = 200;
  auto [mesh1, mesh2] = problem.initial_meshes();
  std::vector<StudyRecord> records;
  for (int level = 0; level < kMaxIterations; ++level) {
    Discretization disc(problem, config, mesh1, mesh2);
    const Eigen::VectorXd u = solve_spd(disc.system);
    if (options.observer) options.observer(disc, u);
    EstimatorBreakdown est;
    StudyRecord rec = record_level(problem, config, disc, u, level, options, &est);
    if (rec.n_dofs > max_dofs) {
      records.push_back(rec);
      break;
    }

    std::vector<double> pooled(est.eta2[0]);
    pooled.insert(pooled.end(), est.eta2[1].begin(), est.eta2[1].end());
    const auto marked = dorfler_mark(pooled, theta);
    const auto n1 = static_cast<Index>(est.eta2[0].size());
    std::vector<Index> marked1, marked2;
    double dist = 0.0;
    for (Index m : marked) {
      const Point c = m < n1 ? disc.space1.mesh.centroid(m) : disc.space2.mesh.centroid(m - n1);
      dist += (c - problem.focus).norm();
      (m < n1 ? marked1 : marked2).push_back(m < n1 ? m : m - n1);
    }
    if (!marked.empty()) rec.mean_marked_distance = dist / static_cast<double>(marked.size());
    records.push_back(rec);
    if (marked.empty()) break;

    mesh1 = refine(mesh1, marked1);
    mesh2 = refine(mesh2, marked2);
  }
  return records;
}

}  // namespace mortarfem
