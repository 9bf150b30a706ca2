// SPDX-FileCopyrightText: Copyright (c) 2026 The mortarfem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <mortarfem/assembly.hpp>
#include <mortarfem/coupling.hpp>
#include <mortarfem/estimator.hpp>
#include <mortarfem/interface.hpp>
#include <mortarfem/mesh.hpp>
#include <mortarfem/space.hpp>

#include <Eigen/Core>

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace mortarfem {

/// Manufactured two-subdomain problem. Functions are indexed by subdomain;
/// they coincide except for the spring problem, whose solution jumps.
struct Problem {
  std::string name;
  Geometry geometry;
  std::array<ScalarFunction, 2> exact_u;
  std::array<GradientFunction, 2> exact_grad;
  std::array<ScalarFunction, 2> rhs_f;
  std::array<ScalarFunction, 2> dirichlet_g;
  std::function<std::pair<Mesh, Mesh>()> initial_meshes;
  /// Point used for marking diagnostics (the reentrant corner for the L-shape).
  Point focus = Point::Zero();
};

/// u = x y sin(pi x / 2) sin(pi y) on (0,1)^2 | (1,2)x(0,1).
Problem problem_smooth();
/// u = r^{2/3} sin(2 theta / 3) on the L-shape, harmonic.
Problem problem_lshape();
/// Exact solution of the penalized problem with constant eps0: y-profile
/// sin(pi y), jump u1 - u2 = -eps0 * du1/dn1 on the interface.
Problem problem_spring(double epsilon0);
/// Global linear u = 1 + 2x - 3y on the split rectangle (f = 0).
Problem problem_patch_linear();
/// Global quadratic u = x^2 + xy + 2y^2 on the split rectangle (f = -6).
Problem problem_patch_quadratic();

/// Everything needed to solve one configuration on one pair of meshes.
struct Discretization {
  Discretization(const Problem& problem, const MethodConfig& config, Mesh mesh1, Mesh mesh2);

  FeSpace space1;
  FeSpace space2;
  MortarInterface iface;
  StabParam stab;
  /// Constrained, finalized system.
  CoupledSystem system;

  Index n_dofs() const { return system.size(); }
  std::span<const double> side1(const Eigen::VectorXd& u) const {
    return {u.data(), static_cast<std::size_t>(space1.n_dofs())};
  }
  std::span<const double> side2(const Eigen::VectorXd& u) const {
    return {u.data() + space1.n_dofs(), static_cast<std::size_t>(space2.n_dofs())};
  }
};

/// Bulk and interface assembly followed by Dirichlet elimination; the result
/// is ready for solve_spd.
CoupledSystem assemble_problem(const Problem& problem, const MethodConfig& config,
                               const FeSpace& space1, const FeSpace& space2,
                               const MortarInterface& iface, const StabParam& stab);

struct EnergyError {
  double gradient_squared = 0.0;
  double jump_squared = 0.0;
  double total() const;
};

/// Energy-norm error of (u1_h, u2_h) against the exact solution:
///   sum_i ||grad(u_i - u_ih)||^2 + sum_seg w_seg ||e1 - e2||^2_seg
/// with w_seg = 1/h_E unless explicit `jump_weights` (one per segment) are given.
EnergyError energy_error(const MortarInterface& iface, const FeSpace& space1, const FeSpace& space2,
                         CoeffView coeffs1, CoeffView coeffs2,
                         const Problem& problem, std::span<const double> jump_weights = {});

struct StudyRecord {
  int level = 0;
  Index n_dofs = 0;
  double h_max = 0.0;
  double energy_error = 0.0;
  double estimator_total = 0.0;
  double interface_estimator_part = 0.0;
  std::optional<double> condition_estimate;
  /// Adaptive runs: mean distance of marked triangle centroids to Problem::focus.
  std::optional<double> mean_marked_distance;
};

enum class RateVariable { MeshSize, Dofs };

struct RateSummary {
  /// One entry per consecutive pair of records.
  std::vector<double> steps;
  /// Least-squares log-log slope over the last three records.
  double slope_last3 = 0.0;
};

/// MeshSize: step = log(e_k/e_{k+1}) / log(h_k/h_{k+1}) (positive when
/// converging). Dofs: step = log(e_{k+1}/e_k) / log(N_{k+1}/N_k) (negative
/// when converging). Throws InvalidArgument with fewer than two records.
RateSummary convergence_rate(std::span<const StudyRecord> records, RateVariable variable);

double least_squares_slope(std::span<const double> x, std::span<const double> y);

struct StudyOptions {
  bool condition = false;
  /// Called with the discretization and solution of every level.
  std::function<void(const Discretization&, const Eigen::VectorXd&)> observer;
};

/// `levels` solves on successively uniformly refined meshes (both
/// subdomains refined independently).
std::vector<StudyRecord> run_uniform_study(const Problem& problem, const MethodConfig& config,
                                           int levels, const StudyOptions& options = {});

/// Solve, estimate, mark (pooled Dörfler over both meshes), refine; stops
/// after the first solve with more than `max_dofs` unknowns.
std::vector<StudyRecord> run_adaptive_study(const Problem& problem, const MethodConfig& config,
                                            double theta, Index max_dofs,
                                            const StudyOptions& options = {});

}  // namespace mortarfem
