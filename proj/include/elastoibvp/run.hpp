#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include "elastoibvp/admissibility.hpp"
#include "elastoibvp/config.hpp"
#include "elastoibvp/field_grid.hpp"

namespace elastoibvp::run {

enum ExitCode : int {
  kSuccess = 0,
  kViolations = 1,  // check-admissibility found violations
  kConfigError = 2,
  kSolverError = 3,
  kIoError = 4,
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Writes through a temporary file in the same directory and renames it into
/// place, so a failed write leaves no partial file. Throws IoError.
void write_atomic(const std::string& path, const std::function<void(std::ostream&)>& body);

/// Field for the linear, variational, riemann or viscous solver.
FieldGrid compute_field(const config::RunConfig& cfg);

/// Exact reference for the problem: the closed-form Riemann solution, or the
/// variational one.
FieldGrid reference_field(const config::RunConfig& cfg, config::ReferenceKind kind);

void write_verify_report(std::ostream& os, const std::vector<double>& eps,
                         const std::vector<double>& errors, bool monotone);

struct CheckReport {
  admissibility::BoundaryReport boundary;
  admissibility::EntropyReport entropy;
  bool ok() const noexcept { return boundary.ok() && entropy.ok(); }
};

CheckReport check_field(const config::RunConfig& cfg, const FieldGrid& field);
void write_check_report(std::ostream& os, const CheckReport& report);

struct Options {
  std::optional<std::string> out;  // overrides the config's output path; "-" is stdout
  bool quiet = false;
  bool check = false;  // run the admissibility checks instead of emitting the field
};

/// Executes the configured solver and writes its artifact. Returns an exit
/// code; diagnostics go to `diag`, artifacts to the output path or `stdout_`.
int run(const config::RunConfig& cfg, const Options& opts, std::ostream& stdout_,
        std::ostream& diag);

}  // namespace elastoibvp::run
