// SPDX-FileCopyrightText: Copyright (c) 2026 The mortarfem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mortarfem {

using Index = std::int64_t;
using Point = Eigen::Vector2d;

using ScalarFunction = std::function<double(const Point&)>;
using GradientFunction = std::function<Point(const Point&)>;

/// Read-only view of a coefficient vector; binds to spans, std::vector and
/// Eigen::VectorXd alike.
class CoeffView : public std::span<const double> {
public:
  using std::span<const double>::span;
  CoeffView(std::span<const double> s) : std::span<const double>(s) {}
  CoeffView(const std::vector<double>& v) : std::span<const double>(v) {}
  CoeffView(const Eigen::VectorXd& v)
      : std::span<const double>(v.data(), static_cast<std::size_t>(v.size())) {}
};

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
  using Error::Error;
};

class InvalidMesh : public Error {
public:
  using Error::Error;
};

class GeometryMismatch : public Error {
public:
  using Error::Error;
};

/// Raised when an internal consistency check fails (a bug, not bad input).
class InternalError : public Error {
public:
  using Error::Error;
};

/// Failure of a numerical stage; `stage()` names the step that failed.
class NumericalError : public Error {
public:
  NumericalError(std::string stage, const std::string& what)
      : Error(stage + ": " + what), stage_(std::move(stage)) {}

  const std::string& stage() const noexcept { return stage_; }

private:
  std::string stage_;
};

/// Symmetric factorization hit a non-positive pivot.
class NotPositiveDefinite : public NumericalError {
public:
  NotPositiveDefinite(Index index, double pivot)
      : NumericalError("solve", "matrix is not positive definite (pivot " +
                                    std::to_string(pivot) + " at unknown " +
                                    std::to_string(index) + ")"),
        index_(index), pivot_(pivot) {}

  Index index() const noexcept { return index_; }
  double pivot() const noexcept { return pivot_; }

private:
  Index index_;
  double pivot_;
};

#define MORTARFEM_THROW_IF(cond, ExcType, msg) \
  do {                                         \
    if (cond) throw ExcType(msg);              \
  } while (false)

}  // namespace mortarfem
