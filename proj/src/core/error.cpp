#include "divcs/error.hpp"

namespace divcs {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonConvexTable: return "NonConvexTable";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::MissingSecondIndex: return "MissingSecondIndex";
    case ErrorCode::EmptySample: return "EmptySample";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::AbsoluteContinuityViolated: return "AbsoluteContinuityViolated";
    case ErrorCode::UnbalancedMarginals: return "UnbalancedMarginals";
    case ErrorCode::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorCode::ExactTooLarge: return "ExactTooLarge";
    case ErrorCode::MonotonicityViolated: return "MonotonicityViolated";
    case ErrorCode::KindMismatch: return "KindMismatch";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace divcs
