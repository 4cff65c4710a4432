#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace robfrechet {

// Stable error codes. The numeric values double as CLI exit statuses and must
// not be renumbered.
enum class ErrorCode : int {
  InvalidArgument = 2,
  DimensionMismatch = 3,
  GridMismatch = 4,
  NearSingularDenominator = 5,
  InvariantError = 6,
  ParseError = 7,
  ShapeError = 8,
  DegenerateBIC = 9,
  NoFeasiblePair = 10,
  InsufficientIterations = 11,
  IoError = 12,
};

std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace robfrechet
