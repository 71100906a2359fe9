#include "tagpcp/errors.hpp"

namespace tagpcp {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::Parse: return "parse error";
    case ErrorCode::MalformedDataword: return "malformed dataword";
    case ErrorCode::InvalidShift: return "invalid shift";
    case ErrorCode::InvalidArgument: return "invalid argument";
    case ErrorCode::UnsupportedArity: return "unsupported arity";
    case ErrorCode::TrackConflict: return "track conflict";
    case ErrorCode::OutOfRange: return "out-of-range underscript";
    case ErrorCode::Decode: return "decode error";
    case ErrorCode::Divergence: return "divergence";
    case ErrorCode::Mismatch: return "mismatch";
    case ErrorCode::Budget: return "budget exceeded";
  }
  return "error";
}

void fail(ErrorCode code, const std::string& what) {
  throw Error(code, std::string(error_code_name(code)) + ": " + what);
}

}  // namespace tagpcp
