#pragma once

#include "elastoibvp/core.hpp"
#include <vector>

#include "elastoibvp/field_grid.hpp"

namespace elastoibvp::riemann {

enum class RiemannCase {
  C1_PositiveEqual,
  C2_NegativeEqual,
  C3_Rarefaction2State,
  C4_RarefactionFromBoundary,
  C5_NonpositiveOutflow,
  C6_Shock,
};

std::string_view to_string(RiemannCase c) noexcept;
CaseLabel case_label(RiemannCase c) noexcept;

/// Constant initial velocity u0 and boundary velocity ub on the level set.
struct RiemannData {
  double u0 = 0.0;
  double ub = 0.0;
  ModelConstants constants;

  RiemannData(double u0_, double ub_, ModelConstants mc) : u0(u0_), ub(ub_), constants(mc) {}

  /// Shifted values v = u - (-1)^(j+1) k.
  double v0() const noexcept { return constants.to_burgers(u0); }
  double vb() const noexcept { return constants.to_burgers(ub); }

  /// Data expressed in shifted variables.
  static RiemannData from_burgers(double v0, double vb, const ModelConstants& mc) {
    return {mc.from_burgers(v0), mc.from_burgers(vb), mc};
  }

  ProblemSpec to_problem() const;
};

/// Strict inequalities only; equalities other than v0 = vb (C1/C2), and the
/// unresolved v0 < vb, v0 + vb <= 0 region, raise UnclassifiedBoundaryCase.
RiemannCase classify(const RiemannData& d);

/// (u0 + ub)/2 - (-1)^(j+1) k; requires C6.
double shock_speed(const RiemannData& d);

struct RiemannPoint {
  State state;
  RiemannCase rcase;
  double v = 0.0;
  /// x sits exactly on a wave edge or on the shock.
  bool on_discontinuity = false;
};

RiemannPoint riemann_solution(const RiemannData& d, double x, double t);

/// Wave positions x = speed * t for the case (fan edges or shock).
std::vector<double> threshold_speeds(const RiemannData& d);

FieldGrid solve_riemann(const RiemannData& d, const Grid& grid);

}  // namespace elastoibvp::riemann
