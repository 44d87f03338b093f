#include "elastoibvp/viscous.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include <fmt/format.h>

#include "elastoibvp/errors.hpp"
#include "elastoibvp/variational.hpp"

namespace elastoibvp::viscous {

namespace {

constexpr double kMaxSteps = 1e8;
constexpr double kFarFieldTolerance = 1e-6;
constexpr double kHopfColeLogLimit = 700.0;

SolverError invalid(const std::string& what) {
  return SolverError(ErrorCode::InvalidArgument, what);
}

// One advected-diffused component with Dirichlet data at both ends.
struct Transported {
  std::vector<double> w;
  std::function<double(double)> left;
  double probe0 = 0.0;  // initial value next to x = L
  Range seen;
};

class Stepper {
 public:
  explicit Stepper(const ViscousConfig& cfg)
      : cfg_(cfg), n_(static_cast<std::size_t>(cfg.nx)), dx_(cfg.dx()),
        rhs_(n_ + 1), cp_(n_ + 1), dp_(n_ + 1) {}

  void advance(Transported& f, const std::vector<double>& speed, double t_new, double dt) {
    const double nu = dt / dx_;
    const double r = cfg_.epsilon * dt / (dx_ * dx_);
    const bool expl = cfg_.scheme == Scheme::ExplicitUpwind;
    auto& w = f.w;
    for (std::size_t i = 1; i < n_; ++i) {
      const double al = 0.5 * (speed[i - 1] + speed[i]);
      const double ar = 0.5 * (speed[i] + speed[i + 1]);
      const double adv = std::max(al, 0.0) * (w[i] - w[i - 1]) +
                         std::min(ar, 0.0) * (w[i + 1] - w[i]);
      rhs_[i] = w[i] - nu * adv;
      if (expl) rhs_[i] += r * (w[i + 1] - 2.0 * w[i] + w[i - 1]);
    }
    const double left = f.left(t_new);
    if (expl) {
      std::copy(rhs_.begin() + 1, rhs_.begin() + static_cast<std::ptrdiff_t>(n_), w.begin() + 1);
    } else {
      // (1 + 2r) x_i - r (x_{i-1} + x_{i+1}) = rhs_i, x_0 and x_n given.
      rhs_[1] += r * left;
      rhs_[n_ - 1] += r * w[n_];
      const double b = 1.0 + 2.0 * r;
      cp_[1] = -r / b;
      dp_[1] = rhs_[1] / b;
      for (std::size_t i = 2; i < n_; ++i) {
        const double m = b + r * cp_[i - 1];
        cp_[i] = -r / m;
        dp_[i] = (rhs_[i] + r * dp_[i - 1]) / m;
      }
      w[n_ - 1] = dp_[n_ - 1];
      for (std::size_t i = n_ - 1; i-- > 1;) w[i] = dp_[i] - cp_[i] * w[i + 1];
    }
    w[0] = left;
    for (std::size_t i = 0; i < n_; ++i) {
      f.seen.lo = std::min(f.seen.lo, w[i]);
      f.seen.hi = std::max(f.seen.hi, w[i]);
    }
    if (std::abs(w[n_ - 1] - f.probe0) > kFarFieldTolerance) {
      throw SolverError(ErrorCode::DomainTooShort,
                        fmt::format("disturbance reached x = L = {} at t = {}", cfg_.length, t_new));
    }
  }

 private:
  const ViscousConfig& cfg_;
  std::size_t n_;
  double dx_;
  std::vector<double> rhs_, cp_, dp_;
};

// Largest stable step for transport speeds bounded by `amax`.
double max_step(const ViscousConfig& cfg, double amax) {
  const double dx = cfg.dx();
  if (cfg.scheme == Scheme::ExplicitUpwind) {
    return cfg.cfl_safety / (amax / dx + 2.0 * cfg.epsilon / (dx * dx));
  }
  return amax > 0.0 ? cfg.cfl_safety * dx / amax : cfg.t_end;
}

std::vector<double> output_times(const ViscousConfig& cfg) {
  std::vector<double> out;
  for (double t : cfg.snapshot_times) {
    if (t < cfg.t_end) out.push_back(t);
  }
  out.push_back(cfg.t_end);
  return out;
}

std::vector<double> mesh(const ViscousConfig& cfg) {
  std::vector<double> xs(static_cast<std::size_t>(cfg.nx) + 1);
  for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = cfg.length * static_cast<double>(i) / cfg.nx;
  return xs;
}

Range init_range(const std::vector<double>& w) {
  auto [lo, hi] = std::minmax_element(w.begin(), w.end());
  return {*lo, *hi};
}

// Drives the time loop, stopping exactly at each output time.
template <typename Step, typename Emit>
void march(const ViscousConfig& cfg, double dt_max, ViscousRun& run, Step step, Emit emit) {
  if (!(dt_max > 0.0) || cfg.t_end / dt_max > kMaxSteps) {
    throw SolverError(ErrorCode::CFLViolation,
                      fmt::format("stability bound needs more than {:g} steps (dt <= {:g})",
                                  kMaxSteps, dt_max));
  }
  run.dt = dt_max;
  emit(0.0);
  double t = 0.0;
  for (double target : output_times(cfg)) {
    const double span = target - t;
    const auto steps = static_cast<long>(std::ceil(span / dt_max - 1e-9));
    const double dt = span / static_cast<double>(std::max(steps, 1L));
    for (long s = 1; s <= steps; ++s) {
      const double t_new = s == steps ? target : t + static_cast<double>(s) * dt;
      step(t_new, dt);
    }
    run.steps += steps;
    t = target;
    emit(t);
  }
}

}  // namespace

void ViscousConfig::validate() const {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw invalid("epsilon must be positive");
  if (!(length > 0.0) || !std::isfinite(length)) throw invalid("domain length must be positive");
  if (nx < 16) throw invalid("nx must be at least 16");
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw invalid("t_end must be positive");
  if (!(cfl_safety > 0.0 && cfl_safety <= 1.0)) throw invalid("cfl_safety must lie in (0, 1]");
  double prev = 0.0;
  for (double t : snapshot_times) {
    if (!(t > prev) || t > t_end) {
      throw invalid("snapshot times must be strictly increasing in (0, t_end]");
    }
    prev = t;
  }
}

ViscousRun solve_scalar_viscous(const ProblemSpec& spec, const ViscousConfig& cfg) {
  require_level_set(spec);
  cfg.validate();
  const ModelConstants& mc = spec.constants;
  ViscousRun run;
  run.config = cfg;
  run.xs = mesh(cfg);
  const std::size_t n = run.xs.size() - 1;

  Transported v;
  v.w.resize(n + 1);
  v.left = [&](double t) { return mc.to_burgers(spec.ub(t)); };
  v.w[0] = v.left(0.0);
  for (std::size_t i = 1; i <= n; ++i) v.w[i] = mc.to_burgers(spec.u0(run.xs[i]));
  v.probe0 = v.w[n - 1];
  v.seen = init_range(v.w);

  const auto [a_lo, a_hi] = spec.u0.range(0.0, cfg.length);
  const auto [b_lo, b_hi] = spec.ub.range(0.0, cfg.t_end);
  const double amax = std::max({std::abs(mc.to_burgers(a_lo)), std::abs(mc.to_burgers(a_hi)),
                                std::abs(mc.to_burgers(b_lo)), std::abs(mc.to_burgers(b_hi))});

  Stepper stepper(cfg);
  std::vector<double> speed(n + 1);
  auto step = [&](double t_new, double dt) {
    speed = v.w;
    stepper.advance(v, speed, t_new, dt);
  };
  auto emit = [&](double t) {
    Snapshot snap{t, std::vector<double>(n + 1), std::vector<double>(n + 1)};
    for (std::size_t i = 0; i <= n; ++i) {
      const State s = mc.on_level_set(mc.from_burgers(v.w[i]));
      snap.u[i] = s.u;
      snap.sigma[i] = s.sigma;
    }
    run.boundary_trace.push_back({t, snap.u[1]});
    run.snapshots.push_back(std::move(snap));
  };
  march(cfg, max_step(cfg, amax), run, step, emit);
  run.observed = {v.seen};
  return run;
}

ViscousRun solve_system_viscous(const ProblemSpec& spec, const ViscousConfig& cfg) {
  cfg.validate();
  const double k = spec.constants.k();
  ViscousRun run;
  run.config = cfg;
  run.xs = mesh(cfg);
  const std::size_t n = run.xs.size() - 1;

  Transported w1, w2;
  w1.w.resize(n + 1);
  w2.w.resize(n + 1);
  w1.left = [&](double t) { return spec.sigmab(t) - k * spec.ub(t); };
  w2.left = [&](double t) { return spec.sigmab(t) + k * spec.ub(t); };
  w1.w[0] = w1.left(0.0);
  w2.w[0] = w2.left(0.0);
  for (std::size_t i = 1; i <= n; ++i) {
    const auto w = riemann_invariants({spec.u0(run.xs[i]), spec.sigma0(run.xs[i])}, k);
    w1.w[i] = w.w1;
    w2.w[i] = w.w2;
  }
  w1.probe0 = w1.w[n - 1];
  w2.probe0 = w2.w[n - 1];
  w1.seen = init_range(w1.w);
  w2.seen = init_range(w2.w);

  // Bounds from the maximum principle, which holds for each invariant.
  auto bounds = [&](double s_sign) {
    const auto [i_lo, i_hi] =
        PiecewiseFn::combine(1.0, spec.sigma0, s_sign * k, spec.u0).range(0.0, cfg.length);
    const auto [b_lo, b_hi] =
        PiecewiseFn::combine(1.0, spec.sigmab, s_sign * k, spec.ub).range(0.0, cfg.t_end);
    return Range{std::min(i_lo, b_lo), std::max(i_hi, b_hi)};
  };
  Range r1 = bounds(-1.0);
  Range r2 = bounds(1.0);
  // An invariant constant to within the level-set tolerance is pinned to an
  // exact constant, which every step then preserves exactly.
  auto pin = [](Transported& f, Range& r) {
    if (r.hi - r.lo > kLevelSetTolerance * std::max({1.0, std::abs(r.lo), std::abs(r.hi)})) return;
    const double value = 0.5 * (r.lo + r.hi);
    std::fill(f.w.begin(), f.w.end(), value);
    f.left = [value](double) { return value; };
    f.probe0 = value;
    f.seen = {value, value};
    r = {value, value};
  };
  pin(w1, r1);
  pin(w2, r2);
  const double u_lo = (r2.lo - r1.hi) / (2.0 * k);
  const double u_hi = (r2.hi - r1.lo) / (2.0 * k);
  // Only varying invariants constrain dt.
  double amax = 0.0;
  if (r1.hi > r1.lo) amax = std::max({amax, std::abs(u_lo + k), std::abs(u_hi + k)});
  if (r2.hi > r2.lo) amax = std::max({amax, std::abs(u_lo - k), std::abs(u_hi - k)});

  Stepper stepper(cfg);
  std::vector<double> s1(n + 1), s2(n + 1);
  auto step = [&](double t_new, double dt) {
    for (std::size_t i = 0; i <= n; ++i) {
      const double u = (w2.w[i] - w1.w[i]) / (2.0 * k);
      s1[i] = u + k;
      s2[i] = u - k;
    }
    stepper.advance(w1, s1, t_new, dt);
    stepper.advance(w2, s2, t_new, dt);
  };
  auto emit = [&](double t) {
    Snapshot snap{t, std::vector<double>(n + 1), std::vector<double>(n + 1)};
    for (std::size_t i = 0; i <= n; ++i) {
      const State s = state_from_invariants(w1.w[i], w2.w[i], k);
      snap.u[i] = s.u;
      snap.sigma[i] = s.sigma;
    }
    run.boundary_trace.push_back({t, snap.u[1]});
    run.snapshots.push_back(std::move(snap));
  };
  march(cfg, max_step(cfg, amax), run, step, emit);
  run.observed = {w1.seen, w2.seen};
  return run;
}

HopfColeValue hopf_cole_initial(const ProblemSpec& spec, double x, double epsilon) {
  if (!(x >= 0.0) || !std::isfinite(x)) throw invalid("x must be >= 0");
  if (!(epsilon > 0.0)) throw invalid("epsilon must be positive");
  // U0 already carries the -(-1)^(j+1) k x term.
  HopfColeValue out;
  out.log_value = -variational::u0_potential(spec, x) / (2.0 * epsilon);
  if (std::abs(out.log_value) <= kHopfColeLogLimit) out.value = std::exp(out.log_value);
  return out;
}

double sample(const ViscousRun& run, const std::vector<double>& values, double x) {
  const double L = run.config.length;
  if (!(x >= 0.0 && x <= L * (1.0 + 1e-12))) {
    throw invalid(fmt::format("x = {} outside the mesh [0, {}]", x, L));
  }
  const std::size_t n = run.xs.size() - 1;
  const double pos = std::min(x / run.config.dx(), static_cast<double>(n));
  const std::size_t i = std::min(static_cast<std::size_t>(pos), n - 1);
  const double theta = pos - static_cast<double>(i);
  return (1.0 - theta) * values[i] + theta * values[i + 1];
}

FieldGrid to_field(const ViscousRun& run, const Grid& grid, double k) {
  grid.validate();
  std::vector<FieldNode> nodes;
  nodes.reserve(grid.size());
  for (double t : grid.ts) {
    auto it = std::find_if(run.snapshots.begin(), run.snapshots.end(), [&](const Snapshot& s) {
      return std::abs(s.t - t) <= 1e-12 * std::max(1.0, t);
    });
    if (it == run.snapshots.end()) throw invalid(fmt::format("no snapshot at t = {}", t));
    for (double x : grid.xs) {
      const State s{sample(run, it->u, x), sample(run, it->sigma, x)};
      nodes.push_back(make_node(x, t, s, k));
    }
  }
  return FieldGrid(grid, std::move(nodes));
}

ConvergenceReport verify_convergence(const ProblemSpec& spec, const ViscousConfig& base,
                                     const std::vector<double>& eps_list,
                                     const FieldGrid& reference, bool system) {
  if (eps_list.empty()) throw invalid("epsilon list is empty");
  for (std::size_t i = 0; i < eps_list.size(); ++i) {
    if (!(eps_list[i] > 0.0)) throw invalid("epsilons must be positive");
    if (i > 0 && !(eps_list[i] < eps_list[i - 1])) {
      throw invalid("epsilons must be strictly decreasing");
    }
  }
  const Grid& grid = reference.grid();
  grid.validate();
  const std::size_t last = reference.nt() - 1;

  ConvergenceReport report;
  report.epsilons = eps_list;
  report.l1_errors.assign(eps_list.size(), 0.0);
  parallel_for(eps_list.size(), [&](std::size_t e) {
    ViscousConfig cfg = base;
    cfg.epsilon = eps_list[e];
    cfg.t_end = grid.ts[last];
    cfg.snapshot_times.clear();
    const ViscousRun run = system ? solve_system_viscous(spec, cfg) : solve_scalar_viscous(spec, cfg);
    double err = 0.0;
    double prev = 0.0;
    for (std::size_t ix = 0; ix < reference.nx(); ++ix) {
      const double d = std::abs(sample(run, run.final().u, grid.xs[ix]) - reference.at(last, ix).u);
      if (ix > 0) err += 0.5 * (d + prev) * (grid.xs[ix] - grid.xs[ix - 1]);
      prev = d;
    }
    report.l1_errors[e] = err;
  });
  report.monotone = std::adjacent_find(report.l1_errors.begin(), report.l1_errors.end(),
                                       std::less_equal<>()) == report.l1_errors.end();
  return report;
}

}  // namespace elastoibvp::viscous
