#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace polyqubit {

enum class ErrorKind {
  LengthMismatch,
  NotNormalized,
  IndexOutOfRange,
  InvalidDensity,
  SingleQubit,
  NotAPermutation,
  NotUnitary,
  BadSubset,
  OutOfRange,
  Infeasible,
  InternalInvariant,
  TheoremViolation,
  WrongSize,
  InvalidConfig,
  QubitCap,
  Malformed,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library carries one of the kinds above so that
// callers (the CLI in particular) can triage without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class NotNormalizedError : public Error {
 public:
  explicit NotNormalizedError(double deviation);
  double deviation() const noexcept { return deviation_; }

 private:
  double deviation_;
};

}  // namespace polyqubit
