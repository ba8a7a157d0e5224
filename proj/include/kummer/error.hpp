#ifndef KUMMER_ERROR_HPP
#define KUMMER_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace kummer {

enum class ErrorCode {
  InvalidParams,
  EpsilonOutOfRange,
  PoleAtIndex,
  NotApplicable,
  NoPositiveRoot,
  NegativeDiscriminant,
  ModeTooSmall,
  PrecisionBelowMinimum,
  InvalidBounds,
  NoConvergence,
  Overflow,
};

constexpr std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::EpsilonOutOfRange: return "EpsilonOutOfRange";
    case ErrorCode::PoleAtIndex: return "PoleAtIndex";
    case ErrorCode::NotApplicable: return "NotApplicable";
    case ErrorCode::NoPositiveRoot: return "NoPositiveRoot";
    case ErrorCode::NegativeDiscriminant: return "NegativeDiscriminant";
    case ErrorCode::ModeTooSmall: return "ModeTooSmall";
    case ErrorCode::PrecisionBelowMinimum: return "PrecisionBelowMinimum";
    case ErrorCode::InvalidBounds: return "InvalidBounds";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::Overflow: return "Overflow";
  }
  return "Unknown";
}

/// Every failure raised by the library. `code()` identifies the condition;
/// NegativeDiscriminant is a refinement of NoPositiveRoot (see `is_no_root`).
class ChfError : public std::runtime_error {
 public:
  ChfError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const noexcept { return error_name(code_); }

  bool is_no_root() const noexcept {
    return code_ == ErrorCode::NoPositiveRoot || code_ == ErrorCode::NegativeDiscriminant;
  }

 private:
  ErrorCode code_;
};

/// PrecisionBelowMinimum carries the smallest reachable log-precision so that
/// callers can retry with a quadratic variant.
class PrecisionBelowMinimumError : public ChfError {
 public:
  PrecisionBelowMinimumError(double log_eps_min, const std::string& what)
      : ChfError(ErrorCode::PrecisionBelowMinimum, what), log_eps_min_(log_eps_min) {}

  double log_eps_min() const noexcept { return log_eps_min_; }

 private:
  double log_eps_min_;
};

}  // namespace kummer

#endif  // KUMMER_ERROR_HPP
