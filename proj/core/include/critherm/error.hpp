#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace critherm {

enum class ErrorCode {
  InvalidArgument,
  SizeCapExceeded,
  NonHermitian,
  SolverFailure,
  GridBoundary,
  NonOverlappingRanges,
  MixedRatios,
  Config,
  Io,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries a stable machine-readable code
// next to the human-readable message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace critherm
