#include "crkit/errors.hpp"

namespace crkit {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::SingularA: return "SingularA";
    case ErrorCode::NoContraction: return "NoContraction";
    case ErrorCode::NormTooLarge: return "NormTooLarge";
    case ErrorCode::Diverged: return "Diverged";
    case ErrorCode::BadWeight: return "BadWeight";
    case ErrorCode::NotBihomogeneous: return "NotBihomogeneous";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::PreconditionViolation: return "PreconditionViolation";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::UnknownFixture: return "UnknownFixture";
  }
  return "Unknown";
}

}  // namespace crkit
