#include "robfrechet/errors.hpp"

namespace robfrechet {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::NearSingularDenominator: return "NearSingularDenominator";
    case ErrorCode::InvariantError: return "InvariantError";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ShapeError: return "ShapeError";
    case ErrorCode::DegenerateBIC: return "DegenerateBIC";
    case ErrorCode::NoFeasiblePair: return "NoFeasiblePair";
    case ErrorCode::InsufficientIterations: return "InsufficientIterations";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace robfrechet
