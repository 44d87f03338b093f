#pragma once

#include <optional>

#include "elastoibvp/core.hpp"
#include "elastoibvp/field_grid.hpp"

namespace elastoibvp::variational {

/// Discretisation controls for the path-cost minimisation.
struct PathCostParams {
  ProblemSpec spec;
  /// Midpoint panels per affine piece of the boundary integrand.
  int quad_points = 64;
  /// Search horizon for the departure point y; unset selects the
  /// finite-speed bound x + (2 max|v0| + 2 max|vb| + 1) t per query.
  std::optional<double> y_max;
  double search_tol = 1e-9;
  /// Coarse scan resolution in each of tau1, tau2.
  int tau_points = 64;

  explicit PathCostParams(ProblemSpec s) : spec(std::move(s)) {}
  /// Throws InvalidArgument on quad_points < 16, search_tol <= 0, y_max <= 0.
  void validate() const;
};

struct MinimizerResult {
  double value = 0.0;  // U(x, t)
  Branch branch = Branch::Interior;
  double y_star = 0.0;
  std::optional<double> tau1;
  std::optional<double> tau2;
  /// Best interior and boundary values, kept for diagnostics.
  double interior_value = 0.0;
  double boundary_value = 0.0;
};

struct BoundaryCostResult {
  double value = 0.0;
  double tau1 = 0.0;
  double tau2 = 0.0;
};

struct ExactPoint {
  State state;
  MinimizerResult minimizer;
  double p = 0.0;  // Burgers variable v = u - (-1)^(j+1) k
};

/// U0(y) = int_0^y u0 + (-1)^j k y, exact for piecewise-affine u0.
double u0_potential(const ProblemSpec& spec, double y);

/// A(x, y, t) = (x - y)^2 / 2t.
double interior_cost(double x, double y, double t);

/// ((ub(s) + (-1)^j k)^+)^2
double boundary_integrand(const ProblemSpec& spec, double s);

/// J(x, y, t, tau1, tau2) for the path (y,0) -> (0,tau1) -> (0,tau2) -> (x,t).
/// Requires 0 <= tau1 <= tau2 < t, and y = 0 when tau1 = 0.
double boundary_path_cost(const PathCostParams& params, double x, double y, double t,
                          double tau1, double tau2);

/// B(x, y, t): boundary_path_cost minimised over the admissible (tau1, tau2).
BoundaryCostResult boundary_cost(const PathCostParams& params, double x, double y, double t);

/// U(x, t) = min over y >= 0 of min(A, B)(x, y, t) + U0(y).
MinimizerResult value_function(const PathCostParams& params, double x, double t);

/// u = p + (-1)^(j+1) k and sigma = (-1)^(j+1) k u + c, with p the slope of
/// the final segment of the optimal path. At x = 0 on the boundary branch, p
/// is the one-sided limit (ub(t-) + (-1)^j k)^+.
ExactPoint exact_solution(const PathCostParams& params, double x, double t);

/// exact_solution at every node; requires t > 0. Ties are flagged.
FieldGrid solve_variational(const PathCostParams& params, const Grid& grid);

}  // namespace elastoibvp::variational
