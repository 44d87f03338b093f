#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "elastoibvp/core.hpp"
#include "elastoibvp/field_grid.hpp"
#include "elastoibvp/viscous.hpp"

namespace elastoibvp::config {

enum class SolverKind { Linear, Variational, Riemann, Viscous, Verify };
enum class ViscousModel { Scalar, System };
enum class ReferenceKind { Riemann, Variational };

std::string_view to_string(SolverKind kind) noexcept;

class ConfigError : public std::runtime_error {
 public:
  enum class Kind { Parse, Validation };

  ConfigError(Kind kind, int line, std::string field, const std::string& what);

  Kind kind() const noexcept { return kind_; }
  /// 1-based source line, 0 when not tied to a line.
  int line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  Kind kind_;
  int line_;
  std::string field_;
};

struct GridSpec {
  double x_max = 1.0;
  double t_max = 1.0;
  int nx = 2;
  int nt = 2;

  Grid make() const { return Grid::uniform(x_max, nx, t_max, nt); }
  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

struct LinearParams {
  double ubar = 0.0;
  /// alpha u + beta sigma = gamma for the one-incoming case.
  double alpha = 1.0;
  double beta = 0.0;
  std::optional<PiecewiseFn> gamma;  // defaults to the boundary u

  friend bool operator==(const LinearParams&, const LinearParams&) = default;
};

struct VariationalParams {
  int quad_points = 64;
  int tau_points = 64;
  double search_tol = 1e-9;
  std::optional<double> y_max;

  friend bool operator==(const VariationalParams&, const VariationalParams&) = default;
};

struct ViscousParams {
  ViscousModel model = ViscousModel::Scalar;
  viscous::ViscousConfig mesh;  // epsilon, length, nx, cfl_safety, scheme

  friend bool operator==(const ViscousParams&, const ViscousParams&) = default;
};

struct VerifyParams {
  std::vector<double> eps_list{0.2, 0.1, 0.05};
  ReferenceKind reference = ReferenceKind::Riemann;

  friend bool operator==(const VerifyParams&, const VerifyParams&) = default;
};

struct RunConfig {
  ProblemSpec spec{ModelConstants(1.0, 0.0, 1), {}, {}, {}, {}};
  GridSpec grid;
  SolverKind solver = SolverKind::Riemann;
  LinearParams linear;
  VariationalParams variational;
  ViscousParams viscous;
  VerifyParams verify;
  std::string output_path;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Parses the INI-style schema documented in docs/config.md. When `forced` is
/// set (a CLI subcommand), [solver] type may be omitted but must agree if given.
RunConfig parse_config(std::string_view text, std::optional<SolverKind> forced = std::nullopt);

/// Writes every field explicitly; parse_config(render_config(c)) == c.
std::string render_config(const RunConfig& config);

/// "0:const:2; 1.5:affine:0.5,1" -> piecewise function.
PiecewiseFn parse_piecewise(std::string_view text);
std::string render_piecewise(const PiecewiseFn& f);

}  // namespace elastoibvp::config
