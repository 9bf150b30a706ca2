// SPDX-FileCopyrightText: Copyright (c) 2026 The mortarfem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <mortarfem/assembly.hpp>
#include <mortarfem/interface.hpp>

#include <optional>
#include <string>
#include <vector>

namespace mortarfem {

enum class Method { Penalty, NitscheOneSided, NitscheAverage };
enum class EpsilonRule { RemarkP1, ExplicitWarburton };

const char* to_string(Method m);

struct MethodConfig {
  Method method = Method::NitscheAverage;
  /// Penalty: eps = penalty_scale * h_E.
  double penalty_scale = 1.0;
  /// Penalty with a constant eps on all of the interface (overrides the scale).
  std::optional<double> fixed_epsilon;
  /// Nitsche safety factor, 0 < alpha < 1 for guaranteed stability.
  double alpha = 0.5;
  int degree = 1;
  EpsilonRule epsilon_rule = EpsilonRule::ExplicitWarburton;
  /// Exponent w of h_E in the Nitsche jump indicator h_E^w ||u1 - u2||^2.
  double nitsche_jump_exponent = -1.0;

  bool is_nitsche() const { return method != Method::Penalty; }
  /// Throws InvalidArgument on out-of-range parameters. Does not reject
  /// alpha >= 1: unstable choices are legal to assemble.
  void validate() const;
};

/// Stabilization / penalty parameter per mortar segment (length units).
struct StabParam {
  std::vector<double> epsilon;
};

/// eps = penalty_scale * h_E, or the fixed value when one is configured.
StabParam penalty_epsilon(const MortarInterface& iface, const MethodConfig& config);

/// eps from the side-1 element K owning each segment's facet E:
///   RemarkP1:          alpha |K| / (2 |E|)                (p = 1 only)
///   ExplicitWarburton: alpha n |K| / (2 (p+1)(p+n) |E|),  n = 2
StabParam nitsche_epsilon(const MortarInterface& iface, const Mesh& mesh1, const MethodConfig& config);

/// Dispatches on `config.method`.
StabParam stabilization(const MortarInterface& iface, const Mesh& mesh1, const MethodConfig& config);

/// Adds sum_seg int (1/eps) (u1 - u2)(v1 - v2) ds.
void assemble_penalty(CoupledSystem& system, const MortarInterface& iface, const FeSpace& space1,
                      const FeSpace& space2, const StabParam& stab);

enum class NitscheVariant { OneSided, Average };

/// Adds the penalty term plus the symmetric flux terms
///   - int {du/dn} (v1 - v2) ds - int {dv/dn} (u1 - u2) ds,
/// where {w} = dw1/dn1 (one-sided, subdomain 1 is the slave) or
/// {w} = (dw1/dn1 - dw2/dn2) / 2 (average; both fluxes against n1).
void assemble_nitsche(CoupledSystem& system, const MortarInterface& iface, const FeSpace& space1,
                      const FeSpace& space2, const StabParam& stab, NitscheVariant variant);

/// Assembles the interface terms selected by `config.method`.
void assemble_interface(CoupledSystem& system, const MortarInterface& iface, const FeSpace& space1,
                        const FeSpace& space2, const StabParam& stab, const MethodConfig& config);

}  // namespace mortarfem
