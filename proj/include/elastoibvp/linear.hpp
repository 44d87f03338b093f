#pragma once

#include <variant>

#include "elastoibvp/core.hpp"
#include "elastoibvp/field_grid.hpp"

namespace elastoibvp::linear {

/// alpha u(0,t) + beta sigma(0,t) = gamma(t)
struct BoundaryCombo {
  double alpha = 1.0;
  double beta = 0.0;
  PiecewiseFn gamma;

  friend bool operator==(const BoundaryCombo&, const BoundaryCombo&) = default;
};

struct BoundaryComboPair {
  BoundaryCombo first;
  BoundaryCombo second;

  /// u(0,t) = gamma_u(t), sigma(0,t) = gamma_sigma(t).
  static BoundaryComboPair dirichlet(PiecewiseFn gamma_u, PiecewiseFn gamma_sigma);

  friend bool operator==(const BoundaryComboPair&, const BoundaryComboPair&) = default;
};

using NoBoundary = std::monostate;
using Boundary = std::variant<NoBoundary, BoundaryCombo, BoundaryComboPair>;

/// Sign pattern of the frozen speeds ubar - k < ubar + k.
enum class SignCase {
  AllOutgoing = 1,  // ubar + k < 0
  OneIncoming = 2,  // ubar - k < 0 < ubar + k
  AllIncoming = 3,  // ubar - k > 0
};

/// Throws WrongCase when a frozen speed vanishes (characteristic boundary).
SignCase classify(double ubar, double k);

/// Linearisation about a constant state with speed ubar, in Riemann invariants.
///
/// The boundary alternative must match the sign case: none for AllOutgoing,
/// one combination for OneIncoming, a pair for AllIncoming. The boundary
/// traces w1(0,t), w2(0,t) are precomputed at construction.
class LinearProblem {
 public:
  LinearProblem(double ubar, double k, PiecewiseFn w10, PiecewiseFn w20, Boundary boundary);

  double ubar() const noexcept { return ubar_; }
  double k() const noexcept { return k_; }
  SignCase sign_case() const noexcept { return case_; }
  const PiecewiseFn& w10() const noexcept { return w10_; }
  const PiecewiseFn& w20() const noexcept { return w20_; }
  const Boundary& boundary() const noexcept { return boundary_; }
  /// Boundary traces; nullptr where the invariant leaves the domain.
  const PiecewiseFn* w1_trace() const noexcept { return w1b_ ? &*w1b_ : nullptr; }
  const PiecewiseFn* w2_trace() const noexcept { return w2b_ ? &*w2b_ : nullptr; }

 private:
  double ubar_;
  double k_;
  SignCase case_;
  PiecewiseFn w10_;
  PiecewiseFn w20_;
  Boundary boundary_;
  std::optional<PiecewiseFn> w1b_;
  std::optional<PiecewiseFn> w2b_;
};

/// Solution of a_t + lambda a_x = 0 in the quarter plane.
/// a0(x - lambda t) if lambda <= 0 or x >= lambda t, else ab(t - x/lambda).
double advect(const PiecewiseFn& a0, const PiecewiseFn* ab, double lambda, double x,
              double t);

RiemannInvariants solve_case1(const LinearProblem& p, double x, double t);
RiemannInvariants solve_case2(const LinearProblem& p, double x, double t);
RiemannInvariants solve_case3(const LinearProblem& p, double x, double t);

struct LinearPoint {
  RiemannInvariants w;
  CaseLabel label = CaseLabel::None;
};

/// Dispatches on the sign case and labels the region of (x, t).
LinearPoint solve_at(const LinearProblem& p, double x, double t);

/// Grid nodes may include t = 0.
FieldGrid solve_linear(const LinearProblem& p, const Grid& grid);

}  // namespace elastoibvp::linear
