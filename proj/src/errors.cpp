#include "ptb/errors.hpp"

namespace ptb {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::BadParameter: return "BadParameter";
    case ErrorKind::NonTimelikeP: return "NonTimelikeP";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::LambdaBoundViolation: return "LambdaBoundViolation";
    case ErrorKind::RealityViolation: return "RealityViolation";
    case ErrorKind::EnergyConditionViolation: return "EnergyConditionViolation";
    case ErrorKind::MassBoundViolation: return "MassBoundViolation";
    case ErrorKind::InadmissibleAlpha: return "InadmissibleAlpha";
    case ErrorKind::StepFailure: return "StepFailure";
    case ErrorKind::NonMonotoneTime: return "NonMonotoneTime";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::FrameMismatch: return "FrameMismatch";
    case ErrorKind::NoRoot: return "NoRoot";
    case ErrorKind::NotCentral: return "NotCentral";
    case ErrorKind::Degenerate: return "Degenerate";
  }
  return "Unknown";
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ConfigError:
    case ErrorKind::BadParameter:
    case ErrorKind::FrameMismatch:
    case ErrorKind::NotCentral:
      return 2;
    case ErrorKind::NonTimelikeP:
    case ErrorKind::LambdaBoundViolation:
    case ErrorKind::RealityViolation:
    case ErrorKind::EnergyConditionViolation:
    case ErrorKind::MassBoundViolation:
    case ErrorKind::InadmissibleAlpha:
    case ErrorKind::NoRoot:
    case ErrorKind::Degenerate:
      return 3;
    case ErrorKind::DomainError:
    case ErrorKind::StepFailure:
    case ErrorKind::OutOfRange:
      return 4;
    case ErrorKind::NonMonotoneTime:
      return 5;
  }
  return 1;
}

Error::Error(ErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(to_string(kind)) + ": " + detail),
      kind_(kind) {}

}  // namespace ptb
