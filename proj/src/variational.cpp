#include "elastoibvp/variational.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "elastoibvp/errors.hpp"

namespace elastoibvp::variational {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Min1 {
  double x = 0.0;
  double f = kInf;
};

/// Golden-section search on [lo, hi]; also compares f(lo), and f(hi) when
/// `include_hi` is set, so minima sitting on the bracket ends are kept.
template <class F>
Min1 golden(F&& f, double lo, double hi, double tol, bool include_hi) {
  Min1 best{lo, f(lo)};
  if (!(hi > lo)) return best;
  auto keep = [&](double x, double fx) {
    if (fx < best.f) best = {x, fx};
  };
  if (include_hi) keep(hi, f(hi));
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = f(d);
    }
  }
  keep(c, fc);
  keep(d, fd);
  return best;
}

struct OrderedMin {
  double value = kInf;
  double tau1 = 0.0;
  double tau2 = 0.0;
};

/// min f1(tau1) + f2(tau2) over 0 <= tau1 <= tau2 < t: uniform scan with
/// n points, then golden refinement of the best cell, separately in each
/// variable and along the diagonal tau1 = tau2.
template <class F1, class F2>
OrderedMin minimize_ordered(F1&& f1, F2&& f2, double t, int n, double tol) {
  std::vector<double> tau(n), v1(n), v2(n);
  for (int i = 0; i < n; ++i) {
    tau[i] = t * i / n;
    v1[i] = f1(tau[i]);
    v2[i] = f2(tau[i]);
  }
  // Grid optimum over i <= j through a running argmin of f1.
  int run = 0, bi = 0, bj = 0, bd = 0;
  double grid_best = kInf, diag_best = kInf;
  for (int j = 0; j < n; ++j) {
    if (v1[j] < v1[run]) run = j;
    if (v1[run] + v2[j] < grid_best) {
      grid_best = v1[run] + v2[j];
      bi = run;
      bj = j;
    }
    if (v1[j] + v2[j] < diag_best) {
      diag_best = v1[j] + v2[j];
      bd = j;
    }
  }
  OrderedMin best{grid_best, tau[bi], tau[bj]};
  auto consider = [&](double a, double b) {
    if (!(a <= b) || !(b < t)) return;
    const double v = f1(a) + f2(b);
    if (v < best.value) best = {v, a, b};
  };
  auto lo = [&](int k) { return k > 0 ? tau[k - 1] : 0.0; };
  auto hi = [&](int k) { return k + 1 < n ? tau[k + 1] : t; };
  auto open_hi = [&](int k) { return k + 1 < n; };

  {
    const Min1 m2 = golden(f2, std::max(lo(bj), tau[bi]), hi(bj), tol, open_hi(bj));
    const double top = std::min(hi(bi), m2.x);
    const Min1 m1 = golden(f1, std::min(lo(bi), top), top, tol, true);
    consider(m1.x, m2.x);
  }
  {
    const Min1 m1 = golden(f1, lo(bi), std::min(hi(bi), tau[bj]), tol, true);
    const Min1 m2 = golden(f2, std::max(lo(bj), m1.x), std::max(hi(bj), m1.x), tol,
                           open_hi(bj));
    consider(m1.x, m2.x);
  }
  {
    auto diag = [&](double s) { return f1(s) + f2(s); };
    const Min1 md = golden(diag, lo(bd), hi(bd), tol, open_hi(bd));
    consider(md.x, md.x);
  }
  return best;
}

void require_time(double t) {
  if (!(t > 0.0)) {
    throw SolverError(ErrorCode::DegenerateTime, "t must be positive, got " + std::to_string(t));
  }
}

void require_x(double x) {
  if (!(x >= 0.0)) throw SolverError(ErrorCode::InvalidArgument, "x must be >= 0");
}

/// Precomputed potentials for one problem.
class Model {
 public:
  explicit Model(const PathCostParams& params)
      : params_(params),
        v0_(params.spec.u0.shifted(params.spec.constants.level_sign() *
                                   params.spec.constants.k())),
        vb_(params.spec.ub.shifted(params.spec.constants.level_sign() *
                                   params.spec.constants.k())) {
    params.validate();
    const auto s0 = v0_.starts();
    u0_cum_.resize(s0.size());
    for (std::size_t i = 1; i < s0.size(); ++i) {
      u0_cum_[i] = u0_cum_[i - 1] + v0_.integral(s0[i - 1], s0[i]);
    }
    const auto sb = vb_.starts();
    g_cum_.resize(sb.size());
    for (std::size_t i = 1; i < sb.size(); ++i) {
      g_cum_[i] = g_cum_[i - 1] + reward_on_piece(i - 1, sb[i - 1], sb[i]);
    }
  }

  const PiecewiseFn& v0() const noexcept { return v0_; }
  const PiecewiseFn& vb() const noexcept { return vb_; }

  double potential(double y) const {
    const std::size_t i = v0_.index_of(y);
    return u0_cum_[i] + v0_.integral(v0_.starts()[i], y);
  }

  /// G(s) = 1/2 int_0^s ((vb)^+)^2.
  double reward(double s) const {
    if (s <= 0.0) return 0.0;
    const std::size_t i = vb_.index_of(s);
    return g_cum_[i] + reward_on_piece(i, vb_.starts()[i], s);
  }

  /// Minimum over [0, y_max] of (a - y)^2 / 2T + U0(y). Exact: U0 is
  /// piecewise quadratic, so each piece has at most one stationary point.
  Min1 min_over_y(double a, double T, double y_max) const {
    Min1 best{0.0, a * a / (2.0 * T)};
    auto keep = [&](double y) {
      const double q = (a - y) * (a - y) / (2.0 * T) + potential(y);
      if (q < best.f || (q == best.f && y < best.x)) best = {y, q};
    };
    keep(y_max);
    const auto starts = v0_.starts();
    const auto pieces = v0_.pieces();
    for (std::size_t i = 0; i < starts.size() && starts[i] < y_max; ++i) {
      const double lo = starts[i];
      const double hi = i + 1 < starts.size() ? std::min(starts[i + 1], y_max) : y_max;
      if (i > 0) keep(lo);
      const double curvature = 1.0 / T + pieces[i].slope;
      if (curvature > 0.0) {
        const double y = (a / T - pieces[i].intercept) / curvature;
        if (y > lo && y < hi) keep(y);
      }
    }
    return best;
  }

  double horizon(double x, double t) const {
    if (params_.y_max) return *params_.y_max;
    const double vb_max = vb_.max_abs(0.0, t);
    double reach = x + t;
    double v0_max = v0_.max_abs(0.0, reach);
    for (int it = 0; it < 16; ++it) {
      reach = x + (2.0 * v0_max + 2.0 * vb_max + 1.0) * t;
      const double next = v0_.max_abs(0.0, reach);
      if (next <= v0_max) break;
      v0_max = next;
    }
    return reach;
  }

  double path_cost(double x, double y, double t, double tau1, double tau2) const {
    const double entry = tau1 > 0.0 ? y * y / (2.0 * tau1) : 0.0;
    const double exit = x > 0.0 ? x * x / (2.0 * (t - tau2)) : 0.0;
    return entry + exit - (reward(tau2) - reward(tau1));
  }

  BoundaryCostResult boundary_cost(double x, double y, double t) const {
    auto f1 = [&](double s) {
      if (s <= 0.0) return y > 0.0 ? kInf : 0.0;
      return y * y / (2.0 * s) + reward(s);
    };
    auto f2 = [&](double s) { return exit_cost(x, t, s); };
    const auto m = minimize_ordered(f1, f2, t, params_.tau_points, params_.search_tol);
    return {m.value, m.tau1, m.tau2};
  }

  MinimizerResult value(double x, double t) const {
    const double y_max = horizon(x, t);
    const double tol = params_.search_tol;
    auto check_horizon = [&](double y) {
      if (y >= y_max - tol) {
        throw SolverError(ErrorCode::HorizonTooSmall,
                          "minimiser y=" + std::to_string(y) + " reached y_max=" +
                              std::to_string(y_max));
      }
    };

    const Min1 interior = min_over_y(x, t, y_max);
    check_horizon(interior.x);

    auto f1 = [&](double s) {
      if (s <= 0.0) return 0.0;
      return min_over_y(0.0, s, y_max).f + reward(s);
    };
    auto f2 = [&](double s) { return exit_cost(x, t, s); };
    const auto b = minimize_ordered(f1, f2, t, params_.tau_points, tol);
    const double y_b = b.tau1 > 0.0 ? min_over_y(0.0, b.tau1, y_max).x : 0.0;

    MinimizerResult r;
    r.interior_value = interior.f;
    r.boundary_value = b.value;
    if (interior.f < b.value - tol) {
      r.branch = Branch::Interior;
    } else if (b.value < interior.f - tol) {
      r.branch = Branch::Boundary;
    } else {
      // y = 0 with tau1 = tau2 = 0 is the interior segment from the corner;
      // at x = 0, touching the boundary only at tau1 -> t is the interior
      // segment ending there.
      const double end_tol = 1e-6 * std::max(1.0, t);
      const bool same_path = (interior.x <= tol && b.tau2 <= tol) ||
                             (x <= tol && b.tau1 >= t - end_tol);
      r.branch = same_path ? Branch::Interior : Branch::Tie;
    }
    if (r.branch == Branch::Boundary) {
      check_horizon(y_b);
      r.value = b.value;
      r.y_star = y_b;
      r.tau1 = b.tau1;
      r.tau2 = b.tau2;
    } else {
      r.value = std::min(interior.f, b.value);
      r.y_star = interior.x;
    }
    return r;
  }

  ExactPoint solution(double x, double t) const {
    const auto& mc = params_.spec.constants;
    ExactPoint out;
    out.minimizer = value(x, t);
    const auto& m = out.minimizer;
    if (m.branch == Branch::Boundary) {
      out.p = x > 0.0 ? x / (t - *m.tau2) : std::max(vb_.left_limit(t), 0.0);
    } else {
      out.p = (x - m.y_star) / t;
    }
    out.state = mc.on_level_set(mc.from_burgers(out.p));
    return out;
  }

 private:
  double exit_cost(double x, double t, double s) const {
    const double seg = x > 0.0 ? x * x / (2.0 * (t - s)) : 0.0;
    return seg - reward(s);
  }

  double reward_on_piece(std::size_t i, double a, double b) const {
    if (b <= a) return 0.0;
    const Piece& p = vb_.pieces()[i];
    auto g = [&](double s) {
      const double v = std::max(p(s), 0.0);
      return 0.5 * v * v;
    };
    if (p.is_constant()) return g(a) * (b - a);
    const int n = params_.quad_points;
    const double h = (b - a) / n;
    double sum = 0.0;
    for (int k = 0; k < n; ++k) sum += g(a + (k + 0.5) * h);
    return sum * h;
  }

  const PathCostParams& params_;
  PiecewiseFn v0_;
  PiecewiseFn vb_;
  std::vector<double> u0_cum_;
  std::vector<double> g_cum_;
};

}  // namespace

void PathCostParams::validate() const {
  if (quad_points < 16) throw SolverError(ErrorCode::InvalidArgument, "quad_points must be >= 16");
  if (tau_points < 2) throw SolverError(ErrorCode::InvalidArgument, "tau_points must be >= 2");
  if (!(search_tol > 0.0)) throw SolverError(ErrorCode::InvalidArgument, "search_tol must be > 0");
  if (y_max && !(*y_max > 0.0)) throw SolverError(ErrorCode::InvalidArgument, "y_max must be > 0");
}

double u0_potential(const ProblemSpec& spec, double y) {
  if (!(y >= 0.0)) throw SolverError(ErrorCode::InvalidArgument, "y must be >= 0");
  return spec.u0.integral(0.0, y) + spec.constants.level_sign() * spec.constants.k() * y;
}

double interior_cost(double x, double y, double t) {
  require_time(t);
  return (x - y) * (x - y) / (2.0 * t);
}

double boundary_integrand(const ProblemSpec& spec, double s) {
  const double v = std::max(spec.ub(s) + spec.constants.level_sign() * spec.constants.k(), 0.0);
  return v * v;
}

double boundary_path_cost(const PathCostParams& params, double x, double y, double t,
                          double tau1, double tau2) {
  require_time(t);
  if (!(tau1 >= 0.0 && tau1 <= tau2 && tau2 < t) || !(x >= 0.0) || !(y >= 0.0)) {
    throw SolverError(ErrorCode::InvalidPath, "path needs 0 <= tau1 <= tau2 < t, x, y >= 0");
  }
  if (tau1 == 0.0 && y > 0.0) {
    throw SolverError(ErrorCode::InvalidPath, "tau1 = 0 requires y = 0");
  }
  return Model(params).path_cost(x, y, t, tau1, tau2);
}

BoundaryCostResult boundary_cost(const PathCostParams& params, double x, double y, double t) {
  require_time(t);
  require_x(x);
  return Model(params).boundary_cost(x, y, t);
}

MinimizerResult value_function(const PathCostParams& params, double x, double t) {
  require_time(t);
  require_x(x);
  return Model(params).value(x, t);
}

ExactPoint exact_solution(const PathCostParams& params, double x, double t) {
  require_time(t);
  require_x(x);
  return Model(params).solution(x, t);
}

FieldGrid solve_variational(const PathCostParams& params, const Grid& grid) {
  grid.validate(/*require_positive_t=*/true);
  const Model model(params);
  const double k = params.spec.constants.k();
  return FieldGrid::evaluate(grid, [&](double x, double t) {
    const auto pt = model.solution(x, t);
    const Branch b = pt.minimizer.branch;
    return make_node(x, t, pt.state, k, CaseLabel::None, b, b == Branch::Tie);
  });
}

}  // namespace elastoibvp::variational
