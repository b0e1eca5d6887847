#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gammalim {

enum class ErrorCode {
  InvalidArgument,
  ZeroConstantTerm,
  DegreeZero,
  PoleArgument,
  NonPositiveArgument,
  CotPole,
  NearPole,
  ExactPole,
  OutOfRadius,
  ScheduleOutOfRadius,
  PrecisionExhausted,
  InternalInconsistency,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so that
/// callers (the CLI in particular) can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace gammalim
