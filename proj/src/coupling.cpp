// SPDX-FileCopyrightText: Copyright (c) 2026 The mortarfem Authors
// SPDX-License-Identifier: Apache-2.0

#include <mortarfem/coupling.hpp>
#include <mortarfem/quadrature.hpp>

#include <algorithm>
#include <array>

namespace mortarfem {

const char* to_string(Method m) {
  switch (m) {
    case Method::Penalty:
      return "penalty";
    case Method::NitscheOneSided:
      return "nitsche-onesided";
    case Method::NitscheAverage:
      return "nitsche-average";
  }
  return "?";
}

void MethodConfig::validate() const {
  MORTARFEM_THROW_IF(degree != 1 && degree != 2, InvalidArgument,
                     "unsupported degree " + std::to_string(degree));
  MORTARFEM_THROW_IF(!(penalty_scale > 0.0), InvalidArgument, "penalty scale must be positive");
  MORTARFEM_THROW_IF(fixed_epsilon && !(*fixed_epsilon > 0.0), InvalidArgument,
                     "fixed epsilon must be positive");
  MORTARFEM_THROW_IF(!(alpha > 0.0), InvalidArgument, "alpha must be positive");
  MORTARFEM_THROW_IF(is_nitsche() && epsilon_rule == EpsilonRule::RemarkP1 && degree != 1,
                     InvalidArgument, "the P1 stabilization rule requires degree 1");
}

StabParam penalty_epsilon(const MortarInterface& iface, const MethodConfig& config) {
  StabParam stab;
  stab.epsilon.reserve(iface.segments.size());
  for (const auto& seg : iface.segments)
    stab.epsilon.push_back(config.fixed_epsilon ? *config.fixed_epsilon
                                                : config.penalty_scale * seg.h_E);
  return stab;
}

StabParam nitsche_epsilon(const MortarInterface& iface, const Mesh& mesh1, const MethodConfig& config) {
  const int p = config.degree;
  constexpr int n = 2;
  double factor = 0.0;
  switch (config.epsilon_rule) {
    case EpsilonRule::RemarkP1:
      MORTARFEM_THROW_IF(p != 1, InvalidArgument,
                         "nitsche_epsilon: the P1 rule is only valid for degree 1");
      factor = config.alpha / 2.0;
      break;
    case EpsilonRule::ExplicitWarburton:
      factor = config.alpha * n / (2.0 * (p + 1) * (p + n));
      break;
  }
  StabParam stab;
  stab.epsilon.reserve(iface.segments.size());
  for (const auto& seg : iface.segments) {
    const double area = mesh1.triangle_area(seg.side(Side::One).triangle);
    stab.epsilon.push_back(factor * area / seg.h_E);
  }
  return stab;
}

StabParam stabilization(const MortarInterface& iface, const Mesh& mesh1, const MethodConfig& config) {
  return config.is_nitsche() ? nitsche_epsilon(iface, mesh1, config) : penalty_epsilon(iface, config);
}

namespace {

// Local interface matrix over the concatenated DOFs [side 1 | side 2].
struct SegmentKernel {
  std::array<Index, 12> dofs{};
  int n1 = 0;
  int n = 0;
  Eigen::Matrix<double, 12, 12> local = Eigen::Matrix<double, 12, 12>::Zero();

  void scatter(SymSparseMatrix& m) const {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (local(i, j) != 0.0) m.add(dofs[static_cast<std::size_t>(i)], dofs[static_cast<std::size_t>(j)], local(i, j));
  }
};

template <typename Integrand>
void assemble_segments(CoupledSystem& system, const MortarInterface& iface, const FeSpace& space1,
                       const FeSpace& space2, Integrand&& integrand) {
  const int p = std::max(space1.degree(), space2.degree());
  const auto& rule = gauss_1d(2 * p + 1);
  for (std::size_t k = 0; k < iface.segments.size(); ++k) {
    const auto& seg = iface.segments[k];
    SegmentKernel kern;
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const double s = seg.s0 + rule.points[q] * seg.length();
      const double w = rule.weights[q] * seg.length();
      const TraceBasis b1 = eval_trace_basis(iface, seg, Side::One, space1, s);
      const TraceBasis b2 = eval_trace_basis(iface, seg, Side::Two, space2, s);
      if (q == 0) {
        kern.n1 = static_cast<int>(b1.dofs.size());
        kern.n = kern.n1 + static_cast<int>(b2.dofs.size());
        for (std::size_t i = 0; i < b1.dofs.size(); ++i) kern.dofs[i] = b1.dofs[i];
        for (std::size_t i = 0; i < b2.dofs.size(); ++i)
          kern.dofs[static_cast<std::size_t>(kern.n1) + i] = b2.dofs[i] + system.offset;
      }
      integrand(k, w, b1, b2, kern);
    }
    kern.scatter(system.matrix);
  }
}

}  // namespace

void assemble_penalty(CoupledSystem& system, const MortarInterface& iface, const FeSpace& space1,
                      const FeSpace& space2, const StabParam& stab) {
  MORTARFEM_THROW_IF(stab.epsilon.size() != iface.segments.size(), InvalidArgument,
                     "assemble_penalty: one epsilon per segment required");
  assemble_segments(system, iface, space1, space2,
                    [&](std::size_t k, double w, const TraceBasis& b1, const TraceBasis& b2,
                        SegmentKernel& kern) {
                      Eigen::Matrix<double, 12, 1> jump = Eigen::Matrix<double, 12, 1>::Zero();
                      for (int i = 0; i < kern.n1; ++i) jump[i] = b1.values[static_cast<std::size_t>(i)];
                      for (int i = kern.n1; i < kern.n; ++i) jump[i] = -b2.values[static_cast<std::size_t>(i - kern.n1)];
                      kern.local += (w / stab.epsilon[k]) * jump * jump.transpose();
                    });
}

void assemble_nitsche(CoupledSystem& system, const MortarInterface& iface, const FeSpace& space1,
                      const FeSpace& space2, const StabParam& stab, NitscheVariant variant) {
  MORTARFEM_THROW_IF(stab.epsilon.size() != iface.segments.size(), InvalidArgument,
                     "assemble_nitsche: one epsilon per segment required");
  assemble_segments(
      system, iface, space1, space2,
      [&](std::size_t k, double w, const TraceBasis& b1, const TraceBasis& b2, SegmentKernel& kern) {
        Eigen::Matrix<double, 12, 1> jump = Eigen::Matrix<double, 12, 1>::Zero();
        Eigen::Matrix<double, 12, 1> flux = Eigen::Matrix<double, 12, 1>::Zero();
        for (int i = 0; i < kern.n1; ++i) {
          jump[i] = b1.values[static_cast<std::size_t>(i)];
          flux[i] = b1.normal_derivs[static_cast<std::size_t>(i)];
        }
        for (int i = kern.n1; i < kern.n; ++i) {
          const auto li = static_cast<std::size_t>(i - kern.n1);
          jump[i] = -b2.values[li];
          // side-2 flux against n1 is -d/dn2
          if (variant == NitscheVariant::Average) flux[i] = -b2.normal_derivs[li];
        }
        if (variant == NitscheVariant::Average) flux *= 0.5;
        kern.local += (w / stab.epsilon[k]) * jump * jump.transpose();
        kern.local -= w * (jump * flux.transpose() + flux * jump.transpose());
      });
}

void assemble_interface(CoupledSystem& system, const MortarInterface& iface, const FeSpace& space1,
                        const FeSpace& space2, const StabParam& stab, const MethodConfig& config) {
  switch (config.method) {
    case Method::Penalty:
      assemble_penalty(system, iface, space1, space2, stab);
      break;
    case Method::NitscheOneSided:
      assemble_nitsche(system, iface, space1, space2, stab, NitscheVariant::OneSided);
      break;
    case Method::NitscheAverage:
      assemble_nitsche(system, iface, space1, space2, stab, NitscheVariant::Average);
      break;
  }
}

}  // namespace mortarfem
