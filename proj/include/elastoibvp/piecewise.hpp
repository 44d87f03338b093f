#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace elastoibvp {

/// One interval of a piecewise function: value(x) = slope * x + intercept.
/// A constant piece has slope == 0.
struct Piece {
  double slope = 0.0;
  double intercept = 0.0;

  static Piece constant(double value) { return {0.0, value}; }
  static Piece affine(double slope, double intercept) { return {slope, intercept}; }

  bool is_constant() const noexcept { return slope == 0.0; }
  double operator()(double x) const noexcept { return slope * x + intercept; }

  friend bool operator==(const Piece&, const Piece&) = default;
};

/// Right-continuous piecewise-affine function on the half line [0, inf).
///
/// Piece i is active on [starts[i], starts[i+1]); the last piece extends to
/// infinity. starts[0] is always 0 and starts are strictly increasing.
class PiecewiseFn {
 public:
  PiecewiseFn() : PiecewiseFn(0.0) {}
  /// Constant function.
  explicit PiecewiseFn(double value);
  PiecewiseFn(std::vector<double> starts, std::vector<Piece> pieces);

  static PiecewiseFn constant(double value) { return PiecewiseFn(value); }
  static PiecewiseFn affine(double slope, double intercept) {
    return PiecewiseFn({0.0}, {Piece::affine(slope, intercept)});
  }
  /// Jump from `left` to `right` at `at` (> 0).
  static PiecewiseFn step(double left, double at, double right);

  double operator()(double x) const noexcept { return pieces_[index_of(x)](x); }
  /// Left limit f(x-); equals f(0) at x = 0.
  double left_limit(double x) const noexcept;

  /// Exact integral over [a, b], 0 <= a <= b.
  double integral(double a, double b) const;

  /// Sup of |f| over [a, b] (attained at piece boundaries).
  double max_abs(double a, double b) const;

  /// Inf and sup of f over [a, b].
  std::pair<double, double> range(double a, double b) const;

  bool all_constant() const noexcept;

  std::size_t size() const noexcept { return pieces_.size(); }
  std::span<const double> starts() const noexcept { return starts_; }
  std::span<const Piece> pieces() const noexcept { return pieces_; }
  std::size_t index_of(double x) const noexcept;

  /// a*f + b*g on the union of both breakpoint sets.
  static PiecewiseFn combine(double a, const PiecewiseFn& f, double b,
                             const PiecewiseFn& g);
  /// x -> f(scale * x) for scale > 0.
  PiecewiseFn rescaled(double scale) const;
  /// x -> f(x) + c.
  PiecewiseFn shifted(double c) const;

  friend bool operator==(const PiecewiseFn&, const PiecewiseFn&) = default;

 private:
  std::vector<double> starts_;
  std::vector<Piece> pieces_;
};

/// Sample points used for consistency checks: every breakpoint, every
/// midpoint, and one point past the last breakpoint.
std::vector<double> sample_points(const PiecewiseFn& f, const PiecewiseFn& g);

}  // namespace elastoibvp
