#pragma once

#include <stdexcept>
#include <string>

namespace crkit {

enum class ErrorCode {
  NotHermitian,
  Singular,
  SingularA,
  NoContraction,
  NormTooLarge,
  Diverged,
  BadWeight,
  NotBihomogeneous,
  LengthMismatch,
  PreconditionViolation,
  ParseError,
  InvariantViolation,
  InvalidArgument,
  IoError,
  UnknownFixture,
};

const char* to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above; the C
/// API maps them one-to-one onto crkit_status values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace crkit
