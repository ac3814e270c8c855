#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ptb {

enum class ErrorKind {
  ConfigError,
  BadParameter,
  NonTimelikeP,
  DomainError,
  LambdaBoundViolation,
  RealityViolation,
  EnergyConditionViolation,
  MassBoundViolation,
  InadmissibleAlpha,
  StepFailure,
  NonMonotoneTime,
  OutOfRange,
  FrameMismatch,
  NoRoot,
  NotCentral,
  Degenerate,
};

std::string_view to_string(ErrorKind kind);

// Process exit code for the CLI: 2 config, 3 admissibility, 4 integration,
// 5 non-monotone time.
int exit_code(ErrorKind kind);

/// Every failure raised by the library. what() is "<Kind>: <detail>" so the
/// CLI can print it verbatim as a one-line machine-parsable reason.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace ptb
