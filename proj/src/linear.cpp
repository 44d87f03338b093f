#include "elastoibvp/linear.hpp"

#include <cmath>
#include <string>

#include "elastoibvp/errors.hpp"

namespace elastoibvp::linear {

namespace {

bool negligible(double value, double scale) {
  return std::abs(value) <= 1e-14 * scale;
}

void require_point(double x, double t) {
  if (!(x >= 0.0) || !(t >= 0.0)) {
    throw SolverError(ErrorCode::InvalidArgument, "linear solution needs x >= 0, t >= 0");
  }
}

void require_case(const LinearProblem& p, SignCase expected) {
  if (p.sign_case() != expected) {
    throw SolverError(ErrorCode::WrongCase,
                      "problem is in sign case " +
                          std::to_string(static_cast<int>(p.sign_case())) + ", not " +
                          std::to_string(static_cast<int>(expected)));
  }
}

std::string_view boundary_name(std::size_t alternative) {
  switch (alternative) {
    case 0: return "no boundary condition";
    case 1: return "one boundary combination";
    default: return "two boundary combinations";
  }
}

}  // namespace

BoundaryComboPair BoundaryComboPair::dirichlet(PiecewiseFn gamma_u, PiecewiseFn gamma_sigma) {
  return {{1.0, 0.0, std::move(gamma_u)}, {0.0, 1.0, std::move(gamma_sigma)}};
}

SignCase classify(double ubar, double k) {
  if (!(k > 0.0)) throw SolverError(ErrorCode::InvalidArgument, "k must be positive");
  if (ubar + k < 0.0) return SignCase::AllOutgoing;
  if (ubar - k < 0.0 && ubar + k > 0.0) return SignCase::OneIncoming;
  if (ubar - k > 0.0) return SignCase::AllIncoming;
  throw SolverError(ErrorCode::WrongCase, "characteristic boundary: ubar = +-k");
}

LinearProblem::LinearProblem(double ubar, double k, PiecewiseFn w10, PiecewiseFn w20,
                             Boundary boundary)
    : ubar_(ubar),
      k_(k),
      case_(classify(ubar, k)),
      w10_(std::move(w10)),
      w20_(std::move(w20)),
      boundary_(std::move(boundary)) {
  const std::size_t expected = static_cast<std::size_t>(case_) - 1;
  if (boundary_.index() != expected) {
    throw SolverError(ErrorCode::WrongCase,
                      "sign case " + std::to_string(static_cast<int>(case_)) + " needs " +
                          std::string(boundary_name(expected)) + ", got " +
                          std::string(boundary_name(boundary_.index())));
  }

  if (case_ == SignCase::OneIncoming) {
    const auto& bc = std::get<BoundaryCombo>(boundary_);
    const double minus = k_ * bc.beta - bc.alpha;
    const double plus = k_ * bc.beta + bc.alpha;
    if (negligible(minus, std::abs(k_ * bc.beta) + std::abs(bc.alpha))) {
      throw SolverError(ErrorCode::DegenerateCombo, "k beta - alpha must be nonzero");
    }
    // (k beta + alpha) w2(0,t) + (k beta - alpha) w1(0,t) = 2k gamma(t), with
    // w2(0,t) = w20((k - ubar) t) carried in from the initial line.
    w1b_ = PiecewiseFn::combine(2.0 * k_ / minus, bc.gamma, -plus / minus,
                                w20_.rescaled(k_ - ubar_));
  } else if (case_ == SignCase::AllIncoming) {
    const auto& [r1, r2] = std::get<BoundaryComboPair>(boundary_);
    const double det = r1.alpha * r2.beta - r1.beta * r2.alpha;
    if (negligible(det, std::abs(r1.alpha * r2.beta) + std::abs(r1.beta * r2.alpha)) ||
        det == 0.0) {
      throw SolverError(ErrorCode::SingularBoundaryMatrix,
                        "alpha11 beta22 - beta11 alpha22 must be nonzero");
    }
    // Rows: (alpha + k beta) w2 + (k beta - alpha) w1 = 2k gamma.
    const double m11 = r1.alpha + k_ * r1.beta, m12 = k_ * r1.beta - r1.alpha;
    const double m21 = r2.alpha + k_ * r2.beta, m22 = k_ * r2.beta - r2.alpha;
    const double d = m11 * m22 - m12 * m21;  // = 2k det
    const double s = 2.0 * k_ / d;
    w2b_ = PiecewiseFn::combine(s * m22, r1.gamma, -s * m12, r2.gamma);
    w1b_ = PiecewiseFn::combine(-s * m21, r1.gamma, s * m11, r2.gamma);
  }
}

double advect(const PiecewiseFn& a0, const PiecewiseFn* ab, double lambda, double x,
              double t) {
  require_point(x, t);
  if (lambda <= 0.0 || x >= lambda * t) return a0(x - lambda * t);
  if (ab == nullptr) {
    throw SolverError(ErrorCode::MissingBoundaryData,
                      "incoming characteristic at x=" + std::to_string(x) +
                          " needs boundary data");
  }
  return (*ab)(t - x / lambda);
}

RiemannInvariants solve_case1(const LinearProblem& p, double x, double t) {
  require_case(p, SignCase::AllOutgoing);
  return {advect(p.w10(), nullptr, p.ubar() + p.k(), x, t),
          advect(p.w20(), nullptr, p.ubar() - p.k(), x, t)};
}

RiemannInvariants solve_case2(const LinearProblem& p, double x, double t) {
  require_case(p, SignCase::OneIncoming);
  return {advect(p.w10(), p.w1_trace(), p.ubar() + p.k(), x, t),
          advect(p.w20(), nullptr, p.ubar() - p.k(), x, t)};
}

RiemannInvariants solve_case3(const LinearProblem& p, double x, double t) {
  require_case(p, SignCase::AllIncoming);
  return {advect(p.w10(), p.w1_trace(), p.ubar() + p.k(), x, t),
          advect(p.w20(), p.w2_trace(), p.ubar() - p.k(), x, t)};
}

LinearPoint solve_at(const LinearProblem& p, double x, double t) {
  const double fast = p.ubar() + p.k();
  const double slow = p.ubar() - p.k();
  switch (p.sign_case()) {
    case SignCase::AllOutgoing:
      return {solve_case1(p, x, t), CaseLabel::Linear1};
    case SignCase::OneIncoming:
      return {solve_case2(p, x, t),
              x >= fast * t ? CaseLabel::Linear2Initial : CaseLabel::Linear2Boundary};
    case SignCase::AllIncoming: {
      const CaseLabel label = x >= fast * t   ? CaseLabel::Linear3Initial
                              : x >= slow * t ? CaseLabel::Linear3Mixed
                                              : CaseLabel::Linear3Boundary;
      return {solve_case3(p, x, t), label};
    }
  }
  throw SolverError(ErrorCode::WrongCase, "unknown sign case");
}

FieldGrid solve_linear(const LinearProblem& p, const Grid& grid) {
  grid.validate(/*require_positive_t=*/false);
  return FieldGrid::evaluate(grid, [&](double x, double t) {
    const auto pt = solve_at(p, x, t);
    const State s = state_from_invariants(pt.w.w1, pt.w.w2, p.k());
    return FieldNode{x, t, s.u, s.sigma, pt.w.w1, pt.w.w2, pt.label, Branch::None, false};
  });
}

}  // namespace elastoibvp::linear
