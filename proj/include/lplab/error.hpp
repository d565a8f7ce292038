#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace lplab {

enum class ErrorKind {
  NonPositiveCoefficient,
  NonPositiveQuotient,
  DegreeTooSmall,
  NotNormalized,
  TailNotDecreasing,
  PrecisionExhausted,
  RequiresExactMode,
  NoConvergence,
  BadParameter,
  BracketInvalid,
  BudgetExceeded,
  CacheCorrupt,
  PreconditionViolated,
  InsufficientProfile,
  ParseError,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Single exception type for the library. `index()` carries the offending
/// coefficient/quotient index, iteration budget or line number when the
/// error kind defines one.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message, std::optional<long> index = std::nullopt);

  ErrorKind kind() const noexcept { return kind_; }
  std::optional<long> index() const noexcept { return index_; }

 private:
  ErrorKind kind_;
  std::optional<long> index_;
};

}  // namespace lplab
