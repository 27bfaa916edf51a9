#include "meissner/error.hpp"

namespace meissner {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
  case ErrorKind::Geometry: return "GeometryError";
  case ErrorKind::DiameterViolation: return "DiameterViolation";
  case ErrorKind::NotExtremal: return "NotExtremal";
  case ErrorKind::WrongPairCount: return "WrongPairCount";
  case ErrorKind::TooManyPairs: return "TooManyPairs";
  case ErrorKind::FaceCycle: return "FaceCycleError";
  case ErrorKind::NoIntersection: return "NoIntersection";
  case ErrorKind::EmptySystem: return "EmptySystem";
  case ErrorKind::Parse: return "ParseError";
  case ErrorKind::ValidationMismatch: return "ValidationMismatch";
  case ErrorKind::NotAWheel: return "NotAWheel";
  case ErrorKind::InfeasibleStart: return "InfeasibleStart";
  case ErrorKind::Io: return "IoError";
  case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Error";
}

bool is_validation_error(ErrorKind kind) noexcept {
  switch (kind) {
  case ErrorKind::DiameterViolation:
  case ErrorKind::NotExtremal:
  case ErrorKind::WrongPairCount:
  case ErrorKind::FaceCycle:
  case ErrorKind::Parse:
  case ErrorKind::ValidationMismatch:
  case ErrorKind::NotAWheel:
  case ErrorKind::InfeasibleStart:
    return true;
  default:
    return false;
  }
}

} // namespace meissner
