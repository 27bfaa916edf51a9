#pragma once

#include <stdexcept>
#include <string>

namespace meissner {

enum class ErrorKind {
  Geometry,
  DiameterViolation,
  NotExtremal,
  WrongPairCount,
  TooManyPairs,
  FaceCycle,
  NoIntersection,
  EmptySystem,
  Parse,
  ValidationMismatch,
  NotAWheel,
  InfeasibleStart,
  Io,
  InvalidArgument,
};

const char* to_string(ErrorKind kind) noexcept;

/// Errors raised by the library. The kind is the stable part; the message is
/// for humans.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

/// True for kinds caused by a bad input body rather than a library fault.
bool is_validation_error(ErrorKind kind) noexcept;

} // namespace meissner
