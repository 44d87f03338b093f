#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace elastoibvp {

enum class ErrorCode {
  InvalidArgument,
  MissingBoundaryData,
  WrongCase,
  DegenerateCombo,
  SingularBoundaryMatrix,
  DegenerateTime,
  InvalidPath,
  HorizonTooSmall,
  UnclassifiedBoundaryCase,
  CFLViolation,
  DomainTooShort,
  EmptyGrid,
  LevelSetViolation,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Raised by the solver modules. The code identifies the failed contract.
class SolverError : public std::runtime_error {
 public:
  SolverError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace elastoibvp
