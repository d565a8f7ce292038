#include "lplab/error.hpp"

namespace lplab {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NonPositiveCoefficient: return "NonPositiveCoefficient";
    case ErrorKind::NonPositiveQuotient: return "NonPositiveQuotient";
    case ErrorKind::DegreeTooSmall: return "DegreeTooSmall";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::TailNotDecreasing: return "TailNotDecreasing";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::RequiresExactMode: return "RequiresExactMode";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::BadParameter: return "BadParameter";
    case ErrorKind::BracketInvalid: return "BracketInvalid";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::CacheCorrupt: return "CacheCorrupt";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::InsufficientProfile: return "InsufficientProfile";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, std::string message, std::optional<long> index)
    : std::runtime_error(std::string(to_string(kind)) + ": " + std::move(message)),
      kind_(kind),
      index_(index) {}

}  // namespace lplab
