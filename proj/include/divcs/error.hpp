#pragma once

#include <stdexcept>
#include <string>

namespace divcs {

enum class ErrorCode {
  InvalidArgument,
  NonConvexTable,
  OutOfRange,
  MissingSecondIndex,
  EmptySample,
  InsufficientData,
  DimensionMismatch,
  AbsoluteContinuityViolated,
  UnbalancedMarginals,
  UnsupportedDimension,
  ExactTooLarge,
  MonotonicityViolated,
  KindMismatch,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

inline void require(bool ok, ErrorCode code, const std::string& what) {
  if (!ok) fail(code, what);
}

}  // namespace divcs
