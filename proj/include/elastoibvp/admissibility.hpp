#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "elastoibvp/core.hpp"
#include "elastoibvp/field_grid.hpp"

namespace elastoibvp::admissibility {

inline constexpr double kAdmissibilityTolerance = 1e-9;

struct TraceSample {
  double t = 0.0;
  double u_trace = 0.0;  // u(0+, t)
  double ub_t = 0.0;     // prescribed u_b(t)
};

/// v_trace in E(vb): {vb} u (-inf, -vb) for vb > 0, (-inf, 0] otherwise.
bool bln_set_contains(double v_trace, double vb);

/// Either v = (vb)^+, or v <= 0 and v^2 >= ((vb)^+)^2, with v and vb the
/// shifted trace and boundary datum.
bool lefloch_admissible(double u_trace, double ub_t, const ModelConstants& constants);

enum class TraceColumn {
  Nearest,        // the column closest to x = 0, including x = 0 itself
  FirstInterior,  // the first column with x > 0
};

/// u(0+, t) by constant extrapolation from one column, per time row.
std::vector<TraceSample> extract_trace(const FieldGrid& field, const ProblemSpec& spec,
                                       TraceColumn column = TraceColumn::Nearest);

struct BoundaryReport {
  std::size_t checked = 0;
  std::vector<TraceSample> violations;
  bool ok() const noexcept { return violations.empty(); }
};

BoundaryReport check_boundary_admissibility(const FieldGrid& field, const ProblemSpec& spec,
                                            TraceColumn column = TraceColumn::Nearest);

struct EntropyViolation {
  double x = 0.0;  // left node of the offending pair
  double t = 0.0;
  double jump = 0.0;
};

struct EntropyReport {
  std::size_t checked = 0;
  std::vector<EntropyViolation> violations;
  bool ok() const noexcept { return violations.empty(); }
};

/// Flags an adjacent-node increase of u that is steeper than the centred
/// rarefaction bound du <= dx / t and also more than ten times the upward
/// increments of its neighbouring pairs. With `constants`, increases that fit
/// a fan issued from the boundary at a later time are also accepted.
EntropyReport check_entropy(const FieldGrid& field,
                            const std::optional<ModelConstants>& constants = std::nullopt);

}  // namespace elastoibvp::admissibility
