#include "elastoibvp/admissibility.hpp"

#include <algorithm>
#include <cmath>

#include "elastoibvp/errors.hpp"

namespace elastoibvp::admissibility {

namespace {

constexpr double kFanRelTolerance = 1e-6;
constexpr double kFanAbsTolerance = 1e-7;
constexpr double kSmoothFactor = 10.0;

}  // namespace

bool bln_set_contains(double v_trace, double vb) {
  const double tol = kAdmissibilityTolerance;
  if (vb > 0.0) return std::abs(v_trace - vb) <= tol || v_trace < -vb;
  return v_trace <= tol;
}

bool lefloch_admissible(double u_trace, double ub_t, const ModelConstants& constants) {
  const double tol = kAdmissibilityTolerance;
  const double v = constants.to_burgers(u_trace);
  const double vb_plus = std::max(constants.to_burgers(ub_t), 0.0);
  if (std::abs(v - vb_plus) <= tol) return true;
  return v <= tol && v * v >= vb_plus * vb_plus - tol;
}

std::vector<TraceSample> extract_trace(const FieldGrid& field, const ProblemSpec& spec,
                                       TraceColumn column) {
  const auto& xs = field.grid().xs;
  if (xs.empty() || field.nt() == 0) {
    throw SolverError(ErrorCode::EmptyGrid, "field has no samples");
  }
  std::size_t ix = static_cast<std::size_t>(std::min_element(xs.begin(), xs.end()) - xs.begin());
  if (column == TraceColumn::FirstInterior) {
    ix = xs.size();
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (xs[i] > 0.0 && (ix == xs.size() || xs[i] < xs[ix])) ix = i;
    }
    if (ix == xs.size()) throw SolverError(ErrorCode::EmptyGrid, "field has no column with x > 0");
  }
  std::vector<TraceSample> out;
  out.reserve(field.nt());
  for (std::size_t it = 0; it < field.nt(); ++it) {
    const double t = field.grid().ts[it];
    out.push_back({t, field.at(it, ix).u, spec.ub(t)});
  }
  return out;
}

BoundaryReport check_boundary_admissibility(const FieldGrid& field, const ProblemSpec& spec,
                                            TraceColumn column) {
  BoundaryReport report;
  for (const auto& s : extract_trace(field, spec, column)) {
    ++report.checked;
    if (!lefloch_admissible(s.u_trace, s.ub_t, spec.constants)) report.violations.push_back(s);
  }
  return report;
}

EntropyReport check_entropy(const FieldGrid& field, const std::optional<ModelConstants>& constants) {
  if (field.nx() < 3 || field.nt() == 0) {
    throw SolverError(ErrorCode::EmptyGrid, "entropy check needs at least 3 x-columns");
  }
  const auto& xs = field.grid().xs;
  EntropyReport report;
  for (std::size_t it = 0; it < field.nt(); ++it) {
    const double t = field.grid().ts[it];
    auto increment = [&](std::size_t ix) { return field.at(it, ix + 1).u - field.at(it, ix).u; };
    // Both samples fit one fan v = x / T centred at (0, t - T), 0 < T <= t.
    auto boundary_fan = [&](std::size_t ix) {
      if (!constants) return false;
      const double vl = constants->to_burgers(field.at(it, ix).u);
      const double vr = constants->to_burgers(field.at(it, ix + 1).u);
      if (vl < -kFanAbsTolerance || vr <= 0.0) return false;
      const double t_left = vl > 0.0 ? xs[ix] / vl : (xs[ix] > 0.0 ? INFINITY : 0.0);
      const double t_right = xs[ix + 1] / vr;
      return t_left <= std::min(t_right, t) * (1.0 + kFanRelTolerance) + kFanAbsTolerance;
    };
    for (std::size_t ix = 0; ix + 1 < field.nx(); ++ix) {
      ++report.checked;
      const double du = increment(ix);
      const double fan = (xs[ix + 1] - xs[ix]) / t;
      if (du <= fan * (1.0 + kFanRelTolerance) + kFanAbsTolerance) continue;
      // Smooth increases have comparable upward neighbouring increments.
      const double smooth = std::max(ix > 0 ? std::max(increment(ix - 1), 0.0) : 0.0,
                                     ix + 2 < field.nx() ? std::max(increment(ix + 1), 0.0) : 0.0);
      if (du <= kSmoothFactor * smooth || boundary_fan(ix)) continue;
      report.violations.push_back({xs[ix], t, du});
    }
  }
  return report;
}

}  // namespace elastoibvp::admissibility
