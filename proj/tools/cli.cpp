// SPDX-FileCopyrightText: Copyright (c) 2026 The mortarfem Authors
// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

#include <mortarfem/experiments.hpp>
#include <mortarfem/report.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mortarfem::cli {

namespace {

struct StudyArgs {
  std::string problem = "smooth";
  std::string method = "nitsche-average";
  std::string mode = "uniform";
  int degree = 1;
  int levels = 5;
  Index max_dofs = 20000;
  double theta = 0.5;
  double alpha = 0.5;
  double penalty_scale = 1.0;
  double epsilon0 = 0.1;
  std::string out;
  std::string mesh_out;
  bool condition = false;
};

struct PlotArgs {
  std::vector<std::string> inputs;
  std::string out;
  std::string axis = "ndofs";
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Problem make_problem(const StudyArgs& a) {
  if (a.problem == "smooth") return problem_smooth();
  if (a.problem == "lshape") return problem_lshape();
  return problem_spring(a.epsilon0);
}

MethodConfig make_config(const StudyArgs& a) {
  static const std::map<std::string, Method> kMethods{{"penalty", Method::Penalty},
                                                      {"nitsche-onesided", Method::NitscheOneSided},
                                                      {"nitsche-average", Method::NitscheAverage}};
  MethodConfig c;
  c.method = kMethods.at(a.method);
  c.degree = a.degree;
  c.alpha = a.alpha;
  c.penalty_scale = a.penalty_scale;
  // the spring problem is exact for the penalized problem with eps = epsilon0
  if (a.problem == "spring" && c.method == Method::Penalty) c.fixed_epsilon = a.epsilon0;
  return c;
}

void validate(const StudyArgs& a, const CLI::App& cmd, std::ostream& err) {
  if (a.degree != 1 && a.degree != 2)
    throw UsageError("unsupported degree " + std::to_string(a.degree) + " (expected 1 or 2)");
  if (a.mode == "uniform" && a.levels < 2) throw UsageError("--levels must be at least 2");
  if (a.mode == "adaptive" && !(a.theta > 0.0 && a.theta <= 1.0))
    throw UsageError("--theta must lie in (0, 1]");
  if (a.mode == "adaptive" && a.max_dofs < 1) throw UsageError("--max-dofs must be positive");
  if (!(a.alpha > 0.0)) throw UsageError("--alpha must be positive");
  if (!(a.penalty_scale > 0.0)) throw UsageError("--penalty-scale must be positive");
  if (!(a.epsilon0 > 0.0)) throw UsageError("--epsilon0 must be positive");
  if (cmd.count("--epsilon0") && a.problem != "spring")
    throw UsageError("--epsilon0 only applies to --problem spring");
  if (cmd.count("--levels") && a.mode != "uniform") throw UsageError("--levels requires --mode uniform");
  if ((cmd.count("--max-dofs") || cmd.count("--theta")) && a.mode != "adaptive")
    throw UsageError("--max-dofs and --theta require --mode adaptive");
  if (a.problem == "lshape" && a.degree == 1)
    err << "warning: lshape with degree 1; the reference experiments use degree 2\n";
}

int run_study(const StudyArgs& a, std::ostream& out) {
  const Problem problem = make_problem(a);
  const MethodConfig config = make_config(a);
  StudyOptions options;
  options.condition = a.condition;
  std::optional<std::pair<Mesh, Mesh>> final_meshes;
  if (!a.mesh_out.empty())
    options.observer = [&](const Discretization& d, const Eigen::VectorXd&) {
      final_meshes.emplace(d.space1.mesh, d.space2.mesh);
    };

  const bool uniform = a.mode == "uniform";
  const auto records = uniform ? run_uniform_study(problem, config, a.levels, options)
                               : run_adaptive_study(problem, config, a.theta, a.max_dofs, options);

  for (const auto& r : records) {
    char line[160];
    std::snprintf(line, sizeof line, "level %2d  ndofs %8lld  error %.6e  estimator %.6e", r.level,
                  static_cast<long long>(r.n_dofs), r.energy_error, r.estimator_total);
    out << line;
    if (r.condition_estimate) {
      std::snprintf(line, sizeof line, "  cond %.4e", *r.condition_estimate);
      out << line;
    }
    out << '\n';
  }
  const auto variable = uniform ? RateVariable::MeshSize : RateVariable::Dofs;
  if (records.size() >= 2)
    out << "slope (last 3, vs " << (uniform ? "h" : "N") << "): " << convergence_rate(records, variable).slope_last3
        << '\n';

  std::ofstream csv(a.out, std::ios::binary);
  if (!csv) throw std::runtime_error("cannot write '" + a.out + "'");
  write_csv(csv, records, variable);

  if (final_meshes) {
    const auto& [m1, m2] = *final_meshes;
    const std::pair<const Mesh*, const char*> parts[] = {{&m1, "_omega1.mesh"}, {&m2, "_omega2.mesh"}};
    for (const auto& [mesh, suffix] : parts) {
      std::ofstream f(a.mesh_out + suffix, std::ios::binary);
      if (!f) throw std::runtime_error("cannot write '" + a.mesh_out + suffix + "'");
      write_mesh(f, *mesh);
    }
  }
  return kExitOk;
}

int run_plot(const PlotArgs& a) {
  std::vector<PlotSeries> series;
  for (const auto& path : a.inputs)
    series.push_back({std::filesystem::path(path).stem().string(), read_csv_file(path)});
  std::ofstream svg(a.out, std::ios::binary);
  if (!svg) throw std::runtime_error("cannot write '" + a.out + "'");
  write_svg(svg, series, a.axis == "h" ? RateVariable::MeshSize : RateVariable::Dofs);
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two-subdomain Poisson interface solver: penalty and Nitsche coupling on non-matching meshes"};
  app.require_subcommand(1);

  StudyArgs sa;
  auto* study = app.add_subcommand("study", "run a uniform or adaptive convergence study");
  study->add_option("--problem", sa.problem, "test problem")
      ->check(CLI::IsMember({"smooth", "lshape", "spring"}));
  study->add_option("--method", sa.method, "interface coupling")
      ->check(CLI::IsMember({"penalty", "nitsche-onesided", "nitsche-average"}));
  study->add_option("--mode", sa.mode, "refinement mode")->check(CLI::IsMember({"uniform", "adaptive"}));
  study->add_option("--degree", sa.degree, "polynomial degree (1 or 2)");
  study->add_option("--levels", sa.levels, "uniform levels");
  study->add_option("--max-dofs", sa.max_dofs, "adaptive stop: first solve above this many unknowns");
  study->add_option("--theta", sa.theta, "Doerfler bulk fraction");
  study->add_option("--alpha", sa.alpha, "Nitsche stabilization factor");
  study->add_option("--penalty-scale", sa.penalty_scale, "penalty eps = scale * h_E");
  study->add_option("--epsilon0", sa.epsilon0, "spring constant (spring problem)");
  study->add_option("--out", sa.out, "CSV output path")->required();
  study->add_option("--mesh-out", sa.mesh_out, "write final meshes to PREFIX_omega{1,2}.mesh");
  study->add_flag("--condition", sa.condition, "estimate the condition number per level");

  PlotArgs pa;
  auto* plot = app.add_subcommand("plot", "log-log plot of one or more study CSVs");
  plot->add_option("csv", pa.inputs, "study CSV files")->required();
  plot->add_option("--out", pa.out, "SVG output path")->required();
  plot->add_option("--x", pa.axis, "abscissa")->check(CLI::IsMember({"h", "ndofs"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*study) {
      validate(sa, *study, err);
      return run_study(sa, out);
    }
    return run_plot(pa);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const CsvError& e) {
    err << "error: malformed CSV: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NumericalError& e) {
    err << "error: numerical failure in stage '" << e.stage() << "': " << e.what() << '\n';
    return kExitNumerical;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace mortarfem::cli
