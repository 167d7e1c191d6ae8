#pragma once

#include <stdexcept>
#include <string>

namespace numera {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Automaton file / structure problems.
struct FormatError : Error { using Error::Error; };
struct DeterminismError : Error { using Error::Error; };
struct EmptyLanguageError : Error { using Error::Error; };
struct NotInLanguageError : Error { using Error::Error; };
struct NotALeftFactorError : Error { using Error::Error; };
struct NotRepresentableError : Error { using Error::Error; };

// Growth analysis.
struct SubExponentialError : Error { using Error::Error; };
struct AmbiguousGrowthError : Error { using Error::Error; };
struct InternalError : Error { using Error::Error; };

// Algebraic numbers.
struct NotSquarefreeError : Error { using Error::Error; };
struct IsolationError : Error { using Error::Error; };
struct DivisionByZeroError : Error { using Error::Error; };

// Generic argument / budget problems.
struct DomainError : Error { using Error::Error; };
struct ExplosionError : Error { using Error::Error; };
struct NoUniqueFixedPointError : Error { using Error::Error; };
struct NotEventuallyPeriodicWithinBudget : Error { using Error::Error; };

}  // namespace numera
