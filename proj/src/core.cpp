#include "elastoibvp/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "elastoibvp/errors.hpp"

namespace elastoibvp {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::MissingBoundaryData: return "MissingBoundaryData";
    case ErrorCode::WrongCase: return "WrongCase";
    case ErrorCode::DegenerateCombo: return "DegenerateCombo";
    case ErrorCode::SingularBoundaryMatrix: return "SingularBoundaryMatrix";
    case ErrorCode::DegenerateTime: return "DegenerateTime";
    case ErrorCode::InvalidPath: return "InvalidPath";
    case ErrorCode::HorizonTooSmall: return "HorizonTooSmall";
    case ErrorCode::UnclassifiedBoundaryCase: return "UnclassifiedBoundaryCase";
    case ErrorCode::CFLViolation: return "CFLViolation";
    case ErrorCode::DomainTooShort: return "DomainTooShort";
    case ErrorCode::EmptyGrid: return "EmptyGrid";
    case ErrorCode::LevelSetViolation: return "LevelSetViolation";
  }
  return "Unknown";
}

State::State(double u_, double sigma_) : u(u_), sigma(sigma_) {
  if (!std::isfinite(u) || !std::isfinite(sigma)) {
    throw SolverError(ErrorCode::InvalidArgument, "state must be finite");
  }
}

ModelConstants::ModelConstants(double k, double c, int j) : k_(k), c_(c), j_(j) {
  if (!(k > 0.0) || !std::isfinite(k)) {
    throw SolverError(ErrorCode::InvalidArgument, "k must be positive");
  }
  if (!std::isfinite(c)) {
    throw SolverError(ErrorCode::InvalidArgument, "c must be finite");
  }
  if (j != 1 && j != 2) {
    throw SolverError(ErrorCode::InvalidArgument, "j must be 1 or 2");
  }
}

ProblemSpec ProblemSpec::on_level_set(const ModelConstants& constants, PiecewiseFn u0,
                                      PiecewiseFn ub) {
  const double a = constants.shift();
  auto sigma0 = PiecewiseFn::combine(a, u0, 0.0, u0).shifted(constants.c());
  auto sigmab = PiecewiseFn::combine(a, ub, 0.0, ub).shifted(constants.c());
  return {constants, std::move(u0), std::move(sigma0), std::move(ub), std::move(sigmab)};
}

RiemannInvariants riemann_invariants(const State& s, double k) {
  return {s.sigma - k * s.u, s.sigma + k * s.u};
}

State state_from_invariants(double w1, double w2, double k) {
  return {(w2 - w1) / (2.0 * k), 0.5 * (w1 + w2)};
}

CharacteristicSpeeds characteristic_speeds(const State& s, double k) {
  return {s.u - k, s.u + k};
}

namespace {

double max_violation(const PiecewiseFn& u, const PiecewiseFn& sigma,
                     const ModelConstants& mc) {
  double worst = 0.0;
  for (double x : sample_points(u, sigma)) {
    const double r = sigma(x) + mc.level_sign() * mc.k() * u(x) - mc.c();
    const double l =
        sigma.left_limit(x) + mc.level_sign() * mc.k() * u.left_limit(x) - mc.c();
    worst = std::max({worst, std::abs(r), std::abs(l)});
  }
  return worst;
}

}  // namespace

LevelSetReport check_level_set(const ProblemSpec& spec, double tol) {
  const double v = std::max(max_violation(spec.u0, spec.sigma0, spec.constants),
                            max_violation(spec.ub, spec.sigmab, spec.constants));
  return {v <= tol, v};
}

void require_level_set(const ProblemSpec& spec, double tol) {
  const auto report = check_level_set(spec, tol);
  if (!report.ok) {
    throw SolverError(ErrorCode::LevelSetViolation,
                      "data off the level set by " + std::to_string(report.max_violation));
  }
}

}  // namespace elastoibvp
