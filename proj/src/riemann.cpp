#include "elastoibvp/riemann.hpp"

#include <string>

#include "elastoibvp/errors.hpp"

namespace elastoibvp::riemann {

std::string_view to_string(RiemannCase c) noexcept {
  switch (c) {
    case RiemannCase::C1_PositiveEqual: return "C1";
    case RiemannCase::C2_NegativeEqual: return "C2";
    case RiemannCase::C3_Rarefaction2State: return "C3";
    case RiemannCase::C4_RarefactionFromBoundary: return "C4";
    case RiemannCase::C5_NonpositiveOutflow: return "C5";
    case RiemannCase::C6_Shock: return "C6";
  }
  return "?";
}

CaseLabel case_label(RiemannCase c) noexcept {
  return static_cast<CaseLabel>(static_cast<int>(CaseLabel::Riemann1) + static_cast<int>(c));
}

ProblemSpec RiemannData::to_problem() const {
  return ProblemSpec::on_level_set(constants, PiecewiseFn(u0), PiecewiseFn(ub));
}

RiemannCase classify(const RiemannData& d) {
  const double v0 = d.v0();
  const double vb = d.vb();
  auto unclassified = [&](const char* why) {
    return SolverError(ErrorCode::UnclassifiedBoundaryCase,
                       std::string(why) + " (v0=" + std::to_string(v0) +
                           ", vb=" + std::to_string(vb) + ")");
  };
  if (v0 == vb) {
    if (v0 > 0.0) return RiemannCase::C1_PositiveEqual;
    if (v0 < 0.0) return RiemannCase::C2_NegativeEqual;
    throw unclassified("v0 = vb = 0");
  }
  if (vb > 0.0) {
    if (vb < v0) return RiemannCase::C3_Rarefaction2State;
    if (v0 + vb > 0.0) return RiemannCase::C6_Shock;
    throw unclassified("shock with non-positive speed reaches the boundary");
  }
  if (vb < 0.0) {
    return v0 > 0.0 ? RiemannCase::C4_RarefactionFromBoundary
                    : RiemannCase::C5_NonpositiveOutflow;
  }
  throw unclassified("vb = 0");
}

double shock_speed(const RiemannData& d) {
  if (classify(d) != RiemannCase::C6_Shock) {
    throw SolverError(ErrorCode::WrongCase, "shock speed is defined for case C6 only");
  }
  return 0.5 * (d.u0 + d.ub) - d.constants.shift();
}

std::vector<double> threshold_speeds(const RiemannData& d) {
  switch (classify(d)) {
    case RiemannCase::C3_Rarefaction2State: return {d.vb(), d.v0()};
    case RiemannCase::C4_RarefactionFromBoundary: return {d.v0()};
    case RiemannCase::C6_Shock: return {shock_speed(d)};
    default: return {};
  }
}

RiemannPoint riemann_solution(const RiemannData& d, double x, double t) {
  if (!(t > 0.0)) throw SolverError(ErrorCode::DegenerateTime, "t must be positive");
  if (!(x >= 0.0)) throw SolverError(ErrorCode::InvalidArgument, "x must be >= 0");
  const RiemannCase rcase = classify(d);
  const double v0 = d.v0();
  const double vb = d.vb();
  double v = v0;
  bool edge = false;
  switch (rcase) {
    case RiemannCase::C1_PositiveEqual:
    case RiemannCase::C2_NegativeEqual:
    case RiemannCase::C5_NonpositiveOutflow:
      v = v0;
      break;
    case RiemannCase::C3_Rarefaction2State:
      v = x < vb * t ? vb : (x < v0 * t ? x / t : v0);
      edge = x == vb * t || x == v0 * t;
      break;
    case RiemannCase::C4_RarefactionFromBoundary:
      v = x < v0 * t ? x / t : v0;
      edge = x == v0 * t;
      break;
    case RiemannCase::C6_Shock: {
      const double s = shock_speed(d);
      v = x < s * t ? vb : v0;
      edge = x == s * t;
      break;
    }
  }
  const auto& mc = d.constants;
  return {mc.on_level_set(mc.from_burgers(v)), rcase, v, edge};
}

FieldGrid solve_riemann(const RiemannData& d, const Grid& grid) {
  grid.validate(/*require_positive_t=*/true);
  const CaseLabel label = case_label(classify(d));
  const double k = d.constants.k();
  return FieldGrid::evaluate(grid, [&](double x, double t) {
    const auto pt = riemann_solution(d, x, t);
    return make_node(x, t, pt.state, k, label, Branch::None, pt.on_discontinuity);
  });
}

}  // namespace elastoibvp::riemann
