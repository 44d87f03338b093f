#pragma once

#include <optional>
#include <vector>

#include "elastoibvp/core.hpp"
#include "elastoibvp/field_grid.hpp"

namespace elastoibvp::viscous {

enum class Scheme {
  ExplicitUpwind,  // explicit advection and diffusion
  SemiImplicit,    // explicit advection, backward-Euler diffusion
};

struct ViscousConfig {
  double epsilon = 0.1;
  double length = 4.0;  // mesh covers [0, length]
  int nx = 400;         // cells; nx + 1 nodes
  double t_end = 1.0;
  double cfl_safety = 0.9;
  Scheme scheme = Scheme::ExplicitUpwind;
  /// Extra output times in (0, t_end); t = 0 and t_end are always recorded.
  std::vector<double> snapshot_times;

  void validate() const;
  double dx() const noexcept { return length / nx; }
  friend bool operator==(const ViscousConfig&, const ViscousConfig&) = default;
};

struct Snapshot {
  double t = 0.0;
  std::vector<double> u;
  std::vector<double> sigma;
};

struct TracePoint {
  double t = 0.0;
  double u = 0.0;  // first interior node, u(dx, t)
};

struct Range {
  double lo = 0.0;
  double hi = 0.0;
};

struct ViscousRun {
  ViscousConfig config;
  std::vector<double> xs;
  std::vector<Snapshot> snapshots;
  std::vector<TracePoint> boundary_trace;
  /// Extremes of each transported variable (v for the scalar solver, w1 and
  /// w2 for the system) over every node and step.
  std::vector<Range> observed;
  long steps = 0;
  double dt = 0.0;

  const Snapshot& final() const { return snapshots.back(); }
};

/// v_t + v v_x = eps v_xx for v = u - (-1)^(j+1) k, Dirichlet v(0,t) = vb(t)
/// and v(L,t) = v(L,0). Requires level-set data.
ViscousRun solve_scalar_viscous(const ProblemSpec& spec, const ViscousConfig& cfg);

/// The full regularised 2x2 system with Dirichlet (ub, sigmab) at x = 0,
/// discretised in Riemann invariants.
ViscousRun solve_system_viscous(const ProblemSpec& spec, const ViscousConfig& cfg);

struct HopfColeValue {
  double log_value = 0.0;
  /// Unset when |log_value| > 700.
  std::optional<double> value;
  bool overflow() const noexcept { return !value.has_value(); }
};

/// w(x, 0) = exp(-(int_0^x u0 - (-1)^(j+1) k x) / 2 eps).
HopfColeValue hopf_cole_initial(const ProblemSpec& spec, double x, double epsilon);

/// Linear interpolation of nodal values (a snapshot array) at x in [0, length].
double sample(const ViscousRun& run, const std::vector<double>& values, double x);

/// Samples the run at grid nodes; grid times must be snapshot times.
FieldGrid to_field(const ViscousRun& run, const Grid& grid, double k);

struct ConvergenceReport {
  std::vector<double> epsilons;
  std::vector<double> l1_errors;
  bool monotone = false;
};

/// L1 error of u^eps(., t) against the last time row of `reference`
/// (trapezoidal rule on the reference x nodes), one run per epsilon.
/// `base` supplies the mesh; its epsilon and t_end are overridden.
ConvergenceReport verify_convergence(const ProblemSpec& spec, const ViscousConfig& base,
                                     const std::vector<double>& eps_list,
                                     const FieldGrid& reference, bool system = false);

}  // namespace elastoibvp::viscous
