// SPDX-FileCopyrightText: Copyright (c) 2026 The mortarfem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <mortarfem/experiments.hpp>

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mortarfem {

inline constexpr const char* kCsvHeader =
    "level,ndofs,h_max,energy_error,estimator,interface_estimator,rate";

/// Malformed or empty CSV input.
class CsvError : public Error {
 public:
  using Error::Error;
};

struct CsvRow {
  int level = 0;
  Index n_dofs = 0;
  double h_max = 0.0;
  double energy_error = 0.0;
  double estimator = 0.0;
  double interface_estimator = 0.0;
  std::optional<double> rate;
};

/// One row per record, 12 significant digits, LF endings. `rate` is the
/// per-step rate against `variable`, empty on the first row.
void write_csv(std::ostream& os, std::span<const StudyRecord> records, RateVariable variable);

std::vector<CsvRow> read_csv(std::istream& is);
std::vector<CsvRow> read_csv_file(const std::string& path);

struct PlotSeries {
  std::string label;
  std::vector<CsvRow> rows;
};

/// Log-log plot of energy error against h or ndofs with two guide slopes.
/// Output depends only on the inputs.
void write_svg(std::ostream& os, std::span<const PlotSeries> series, RateVariable variable);

}  // namespace mortarfem
