#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace charp {

enum class ErrorCode {
  InvalidContext,
  RingMismatch,
  IndexOutOfRange,
  ExponentOverflow,
  DivisionNotExact,
  ZeroDivisor,
  NotAPthPower,
  ZeroDenominator,
  InverseOfZero,
  ZeroArgument,
  NotClosed,
  NotExact,
  NotCartierFixed,
  NoWitnessOnChart,
  InvalidChart,
  SingularMatrix,
  ShapeViolation,
  NotAbelian,
  CharTwo,
  ZeroUnit,
  InconsistentWitnesses,
  SyntaxError,
  SortError,
  UnknownVariable,
  InternalAssertion,
};

std::string_view error_name(ErrorCode code) noexcept;

/// Domain error raised by every library operation. The code is stable and is
/// what the CLI maps to exit statuses; the message carries the details.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_name(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

/// Internal consistency check. A failure means a bug, not bad input.
inline void ensure(bool condition, const std::string& what) {
  if (!condition) fail(ErrorCode::InternalAssertion, what);
}

}  // namespace charp
