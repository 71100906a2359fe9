#pragma once

#include <stdexcept>
#include <string>

namespace tagpcp {

enum class ErrorCode {
  Parse,
  MalformedDataword,
  InvalidShift,
  InvalidArgument,
  UnsupportedArity,
  TrackConflict,
  OutOfRange,
  Decode,
  Divergence,
  Mismatch,
  Budget,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

}  // namespace tagpcp
