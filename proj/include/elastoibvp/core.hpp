#pragma once

#include "elastoibvp/piecewise.hpp"

namespace elastoibvp {

/// Velocity and stress at one space-time point.
struct State {
  double u = 0.0;
  double sigma = 0.0;

  State() = default;
  State(double u_, double sigma_);

  friend bool operator==(const State&, const State&) = default;
};

struct RiemannInvariants {
  double w1 = 0.0;  // sigma - k u, constant along 2-characteristics
  double w2 = 0.0;  // sigma + k u, constant along 1-characteristics
};

struct CharacteristicSpeeds {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
};

/// Wave speed k, level-set constant c and the index j of the Riemann
/// invariant whose level set carries the data.
class ModelConstants {
 public:
  ModelConstants(double k, double c, int j);

  double k() const noexcept { return k_; }
  double c() const noexcept { return c_; }
  int j() const noexcept { return j_; }

  /// (-1)^j
  double level_sign() const noexcept { return j_ == 1 ? -1.0 : 1.0; }
  /// (-1)^(j+1); u = v + shift() and sigma = shift() * u + c on the level set.
  double shift_sign() const noexcept { return -level_sign(); }
  double shift() const noexcept { return shift_sign() * k_; }

  /// Burgers variable v = u - (-1)^(j+1) k.
  double to_burgers(double u) const noexcept { return u - shift(); }
  double from_burgers(double v) const noexcept { return v + shift(); }
  /// State on the level set sigma + (-1)^j k u = c.
  State on_level_set(double u) const noexcept { return {u, shift() * u + c_}; }

  friend bool operator==(const ModelConstants&, const ModelConstants&) = default;

 private:
  double k_;
  double c_;
  int j_;
};

struct ProblemSpec {
  ModelConstants constants;
  PiecewiseFn u0;
  PiecewiseFn sigma0;
  PiecewiseFn ub;
  PiecewiseFn sigmab;

  /// Data on the level set determined by `constants`, sigma derived from u.
  static ProblemSpec on_level_set(const ModelConstants& constants, PiecewiseFn u0,
                                  PiecewiseFn ub);

  friend bool operator==(const ProblemSpec&, const ProblemSpec&) = default;
};

inline constexpr double kLevelSetTolerance = 1e-12;

RiemannInvariants riemann_invariants(const State& s, double k);
State state_from_invariants(double w1, double w2, double k);
CharacteristicSpeeds characteristic_speeds(const State& s, double k);

struct LevelSetReport {
  bool ok = false;
  double max_violation = 0.0;
};

/// Samples sigma + (-1)^j k u - c over the breakpoints and midpoints of the
/// initial and boundary data.
LevelSetReport check_level_set(const ProblemSpec& spec, double tol = kLevelSetTolerance);

/// Throws SolverError(LevelSetViolation) if check_level_set fails.
void require_level_set(const ProblemSpec& spec, double tol = kLevelSetTolerance);

}  // namespace elastoibvp
