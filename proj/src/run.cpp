#include "elastoibvp/run.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>
#include <system_error>

#include <unistd.h>

#include <fmt/format.h>

#include "elastoibvp/errors.hpp"
#include "elastoibvp/linear.hpp"
#include "elastoibvp/riemann.hpp"
#include "elastoibvp/variational.hpp"
#include "elastoibvp/viscous.hpp"

namespace elastoibvp::run {

namespace {

namespace fs = std::filesystem;
using config::RunConfig;
using config::SolverKind;

double constant_value(const PiecewiseFn& f, const char* what) {
  if (f.size() != 1 || !f.pieces()[0].is_constant()) {
    throw SolverError(ErrorCode::InvalidArgument,
                      fmt::format("riemann solver needs constant {}", what));
  }
  return f.pieces()[0].intercept;
}

riemann::RiemannData riemann_data(const RunConfig& cfg) {
  return {constant_value(cfg.spec.u0, "initial u"), constant_value(cfg.spec.ub, "boundary u"),
          cfg.spec.constants};
}

linear::LinearProblem linear_problem(const RunConfig& cfg) {
  const auto& s = cfg.spec;
  const double k = s.constants.k();
  const double ubar = cfg.linear.ubar;
  auto w1 = PiecewiseFn::combine(1.0, s.sigma0, -k, s.u0);
  auto w2 = PiecewiseFn::combine(1.0, s.sigma0, k, s.u0);
  linear::Boundary boundary;
  switch (linear::classify(ubar, k)) {
    case linear::SignCase::AllOutgoing: break;
    case linear::SignCase::OneIncoming:
      boundary = linear::BoundaryCombo{cfg.linear.alpha, cfg.linear.beta,
                                       cfg.linear.gamma.value_or(s.ub)};
      break;
    case linear::SignCase::AllIncoming:
      boundary = linear::BoundaryComboPair::dirichlet(s.ub, s.sigmab);
      break;
  }
  return {ubar, k, std::move(w1), std::move(w2), std::move(boundary)};
}

variational::PathCostParams path_params(const RunConfig& cfg) {
  variational::PathCostParams p(cfg.spec);
  p.quad_points = cfg.variational.quad_points;
  p.tau_points = cfg.variational.tau_points;
  p.search_tol = cfg.variational.search_tol;
  p.y_max = cfg.variational.y_max;
  return p;
}

viscous::ViscousRun viscous_run(const RunConfig& cfg, const Grid& grid) {
  viscous::ViscousConfig v = cfg.viscous.mesh;
  v.t_end = grid.ts.back();
  v.snapshot_times = grid.ts;
  return cfg.viscous.model == config::ViscousModel::System
             ? viscous::solve_system_viscous(cfg.spec, v)
             : viscous::solve_scalar_viscous(cfg.spec, v);
}

template <typename Body>
void emit(const std::string& path, std::ostream& stdout_, Body&& body) {
  if (path.empty() || path == "-") {
    body(stdout_);
    stdout_.flush();
    if (!stdout_) throw IoError("failed writing to standard output");
  } else {
    write_atomic(path, body);
  }
}

}  // namespace

void write_atomic(const std::string& path, const std::function<void(std::ostream&)>& body) {
  const fs::path target(path);
  fs::path tmp = target;
  tmp += fmt::format(".tmp.{}", ::getpid());
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError(fmt::format("cannot open '{}' for writing", tmp.string()));
    body(os);
    os.flush();
    if (!os) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw IoError(fmt::format("write to '{}' failed", tmp.string()));
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    std::error_code ignored;
    fs::remove(tmp, ignored);
    throw IoError(fmt::format("cannot move output into '{}': {}", path, ec.message()));
  }
}

FieldGrid compute_field(const RunConfig& cfg) {
  const Grid grid = cfg.grid.make();
  switch (cfg.solver) {
    case SolverKind::Linear: return linear::solve_linear(linear_problem(cfg), grid);
    case SolverKind::Variational: return variational::solve_variational(path_params(cfg), grid);
    case SolverKind::Riemann: return riemann::solve_riemann(riemann_data(cfg), grid);
    case SolverKind::Viscous:
      return viscous::to_field(viscous_run(cfg, grid), grid, cfg.spec.constants.k());
    case SolverKind::Verify: break;
  }
  throw SolverError(ErrorCode::InvalidArgument,
                    fmt::format("solver '{}' does not produce a field", config::to_string(cfg.solver)));
}

FieldGrid reference_field(const RunConfig& cfg, config::ReferenceKind kind) {
  const Grid grid = cfg.grid.make();
  if (kind == config::ReferenceKind::Riemann) {
    return riemann::solve_riemann(riemann_data(cfg), grid);
  }
  return variational::solve_variational(path_params(cfg), grid);
}

void write_verify_report(std::ostream& os, const std::vector<double>& eps,
                         const std::vector<double>& errors, bool monotone) {
  os << "epsilon,l1_error,monotone\n";
  for (std::size_t i = 0; i < eps.size(); ++i) {
    os << fmt::format("{:.17g},{:.17g},{}\n", eps[i], errors[i], monotone ? "true" : "false");
  }
}

CheckReport check_field(const RunConfig& cfg, const FieldGrid& field) {
  // The viscous x = 0 node holds the Dirichlet datum, not the trace.
  const auto column = cfg.solver == SolverKind::Viscous ? admissibility::TraceColumn::FirstInterior
                                                        : admissibility::TraceColumn::Nearest;
  return {admissibility::check_boundary_admissibility(field, cfg.spec, column),
          admissibility::check_entropy(field, cfg.spec.constants)};
}

void write_check_report(std::ostream& os, const CheckReport& report) {
  os << "check,x,t,value\n";
  for (const auto& v : report.boundary.violations) {
    os << fmt::format("boundary,0,{:.17g},{:.17g}\n", v.t, v.u_trace);
  }
  for (const auto& v : report.entropy.violations) {
    os << fmt::format("entropy,{:.17g},{:.17g},{:.17g}\n", v.x, v.t, v.jump);
  }
}

int run(const RunConfig& cfg, const Options& opts, std::ostream& stdout_, std::ostream& diag) {
  const std::string path = opts.out.value_or(cfg.output_path);
  try {
    if (cfg.solver == SolverKind::Verify) {
      const FieldGrid ref = reference_field(cfg, cfg.verify.reference);
      const auto report = viscous::verify_convergence(
          cfg.spec, cfg.viscous.mesh, cfg.verify.eps_list, ref,
          cfg.viscous.model == config::ViscousModel::System);
      emit(path, stdout_, [&](std::ostream& os) {
        write_verify_report(os, report.epsilons, report.l1_errors, report.monotone);
      });
      if (!opts.quiet) diag << fmt::format("monotone = {}\n", report.monotone);
      return kSuccess;
    }
    const FieldGrid field = compute_field(cfg);
    if (opts.check) {
      const CheckReport report = check_field(cfg, field);
      emit(path, stdout_, [&](std::ostream& os) { write_check_report(os, report); });
      if (!opts.quiet) {
        diag << fmt::format("boundary: {} of {} traces violate; entropy: {} of {} pairs violate\n",
                            report.boundary.violations.size(), report.boundary.checked,
                            report.entropy.violations.size(), report.entropy.checked);
      }
      return report.ok() ? kSuccess : kViolations;
    }
    emit(path, stdout_, [&](std::ostream& os) { write_csv(os, field); });
    if (!opts.quiet) diag << fmt::format("wrote {} nodes\n", field.nodes().size());
    return kSuccess;
  } catch (const IoError& e) {
    diag << "io error: " << e.what() << '\n';
    return kIoError;
  } catch (const SolverError& e) {
    diag << "solver error: " << e.what() << '\n';
    return kSolverError;
  }
}

}  // namespace elastoibvp::run
