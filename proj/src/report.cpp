// SPDX-FileCopyrightText: Copyright (c) 2026 The mortarfem Authors
// SPDX-License-Identifier: Apache-2.0

#include <mortarfem/report.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace mortarfem {

namespace {

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string g12(double v) { return fmt("%.12g", v); }

double parse_double(const std::string& field, std::size_t line) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(field, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (field.empty() || used != field.size() || !std::isfinite(v))
    throw CsvError("line " + std::to_string(line) + ": bad number '" + field + "'");
  return v;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

void write_csv(std::ostream& os, std::span<const StudyRecord> records, RateVariable variable) {
  std::vector<double> rates;
  if (records.size() >= 2) rates = convergence_rate(records, variable).steps;
  os << kCsvHeader << '\n';
  for (std::size_t k = 0; k < records.size(); ++k) {
    const auto& r = records[k];
    os << r.level << ',' << r.n_dofs << ',' << g12(r.h_max) << ',' << g12(r.energy_error) << ','
       << g12(r.estimator_total) << ',' << g12(r.interface_estimator_part) << ',';
    if (k > 0) os << g12(rates[k - 1]);
    os << '\n';
  }
}

std::vector<CsvRow> read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw CsvError("empty CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) throw CsvError("unexpected CSV header '" + line + "'");

  std::vector<CsvRow> rows;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != 7)
      throw CsvError("line " + std::to_string(lineno) + ": expected 7 fields, got " +
                     std::to_string(f.size()));
    CsvRow row;
    const double level = parse_double(f[0], lineno);
    const double ndofs = parse_double(f[1], lineno);
    if (level != std::floor(level) || ndofs != std::floor(ndofs) || ndofs <= 0)
      throw CsvError("line " + std::to_string(lineno) + ": level and ndofs must be integers");
    row.level = static_cast<int>(level);
    row.n_dofs = static_cast<Index>(ndofs);
    row.h_max = parse_double(f[2], lineno);
    row.energy_error = parse_double(f[3], lineno);
    row.estimator = parse_double(f[4], lineno);
    row.interface_estimator = parse_double(f[5], lineno);
    if (!f[6].empty()) row.rate = parse_double(f[6], lineno);
    if (row.h_max <= 0.0 || row.energy_error <= 0.0)
      throw CsvError("line " + std::to_string(lineno) + ": h_max and energy_error must be positive");
    rows.push_back(row);
  }
  if (rows.empty()) throw CsvError("CSV has no data rows");
  return rows;
}

std::vector<CsvRow> read_csv_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CsvError("cannot open '" + path + "'");
  return read_csv(in);
}

void write_svg(std::ostream& os, std::span<const PlotSeries> series, RateVariable variable) {
  MORTARFEM_THROW_IF(series.empty(), InvalidArgument, "write_svg: no series");
  constexpr double kWidth = 640, kHeight = 480, kLeft = 70, kRight = 170, kTop = 20, kBottom = 50;
  static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

  const auto xval = [variable](const CsvRow& r) {
    return std::log10(variable == RateVariable::MeshSize ? r.h_max : static_cast<double>(r.n_dofs));
  };
  double x0 = std::numeric_limits<double>::max(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : series)
    for (const auto& r : s.rows) {
      x0 = std::min(x0, xval(r));
      x1 = std::max(x1, xval(r));
      y0 = std::min(y0, std::log10(r.energy_error));
      y1 = std::max(y1, std::log10(r.energy_error));
    }
  // whole decades, at least one wide
  x0 = std::floor(x0);
  x1 = std::max(std::ceil(x1), x0 + 1);
  y0 = std::floor(y0);
  y1 = std::max(std::ceil(y1), y0 + 1);

  const auto px = [&](double lx) { return kLeft + (lx - x0) / (x1 - x0) * (kWidth - kLeft - kRight); };
  const auto py = [&](double ly) { return kTop + (y1 - ly) / (y1 - y0) * (kHeight - kTop - kBottom); };
  const auto f2 = [](double v) { return fmt("%.2f", v); };

  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
     << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<polyline points=\"" << f2(px(x0)) << ',' << f2(py(y1)) << ' ' << f2(px(x0)) << ','
     << f2(py(y0)) << ' ' << f2(px(x1)) << ',' << f2(py(y0))
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (double d = x0; d <= x1 + 0.5; d += 1.0)
    os << "<text x=\"" << f2(px(d)) << "\" y=\"" << f2(py(y0) + 18) << "\" text-anchor=\"middle\">1e"
       << static_cast<int>(d) << "</text>\n";
  for (double d = y0; d <= y1 + 0.5; d += 1.0)
    os << "<text x=\"" << f2(px(x0) - 6) << "\" y=\"" << f2(py(d) + 4) << "\" text-anchor=\"end\">1e"
       << static_cast<int>(d) << "</text>\n";
  os << "<text x=\"" << f2((px(x0) + px(x1)) / 2) << "\" y=\"" << f2(kHeight - 10)
     << "\" text-anchor=\"middle\">" << (variable == RateVariable::MeshSize ? "h" : "N") << "</text>\n";
  os << "<text x=\"14\" y=\"" << f2((py(y0) + py(y1)) / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 14 "
     << f2((py(y0) + py(y1)) / 2) << ")\">energy error</text>\n";

  // guides through the first point of the first series
  const auto& anchor = series.front().rows.front();
  const double ax = xval(anchor), ay = std::log10(anchor.energy_error);
  const double sign = variable == RateVariable::MeshSize ? 1.0 : -1.0;
  const std::pair<double, const char*> guides[] = {
      {0.5, variable == RateVariable::MeshSize ? "h^1/2" : "N^-1/2"},
      {1.0, variable == RateVariable::MeshSize ? "h^1" : "N^-1"}};
  double legend_y = kTop + 10;
  for (const auto& [slope, label] : guides) {
    const double s = sign * slope;
    // clip to the plot box
    double gx0 = x0, gx1 = x1;
    const auto gy = [&](double x) { return ay + s * (x - ax); };
    const auto clip = [&](double& x) {
      if (gy(x) > y1) x = ax + (y1 - ay) / s;
      if (gy(x) < y0) x = ax + (y0 - ay) / s;
      x = std::clamp(x, x0, x1);
    };
    clip(gx0);
    clip(gx1);
    os << "<polyline points=\"" << f2(px(gx0)) << ',' << f2(py(gy(gx0))) << ' ' << f2(px(gx1)) << ','
       << f2(py(gy(gx1))) << "\" fill=\"none\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";
    os << "<text x=\"" << f2(kWidth - kRight + 40) << "\" y=\"" << f2(legend_y + 4) << "\">" << label
       << "</text>\n";
    os << "<polyline points=\"" << f2(kWidth - kRight + 10) << ',' << f2(legend_y) << ' '
       << f2(kWidth - kRight + 34) << ',' << f2(legend_y)
       << "\" fill=\"none\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";
    legend_y += 18;
  }

  for (std::size_t i = 0; i < series.size(); ++i) {
    const char* color = kColors[i % std::size(kColors)];
    os << "<polyline points=\"";
    for (std::size_t k = 0; k < series[i].rows.size(); ++k) {
      const auto& r = series[i].rows[k];
      if (k) os << ' ';
      os << f2(px(xval(r))) << ',' << f2(py(std::log10(r.energy_error)));
    }
    os << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    os << "<polyline points=\"" << f2(kWidth - kRight + 10) << ',' << f2(legend_y) << ' '
       << f2(kWidth - kRight + 34) << ',' << f2(legend_y) << "\" fill=\"none\" stroke=\"" << color
       << "\" stroke-width=\"2\"/>\n";
    std::string label;
    for (char c : series[i].label) {
      if (c == '<') label += "&lt;";
      else if (c == '>') label += "&gt;";
      else if (c == '&') label += "&amp;";
      else label += c;
    }
    os << "<text x=\"" << f2(kWidth - kRight + 40) << "\" y=\"" << f2(legend_y + 4) << "\">" << label
       << "</text>\n";
    legend_y += 18;
  }
  os << "</svg>\n";
}

}  // namespace mortarfem
