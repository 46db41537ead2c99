#pragma once

#include <stdexcept>
#include <string>

namespace radlab {

// Base class for every error thrown by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotHermitian : Error { using Error::Error; };
struct DidNotConverge : Error { using Error::Error; };
struct NegativeEigenvalue : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct UnsupportedDim : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };
struct UnitViolation : Error { using Error::Error; };
struct ComplexInput : Error { using Error::Error; };
struct NotInvertible : Error { using Error::Error; };
struct HypothesisFailed : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

// Thrown by the certified-operand search when the budget runs out with no
// hits; carries the attempt count so callers can report the hit rate.
struct NoHitsInBudget : Error {
  long attempts;
  NoHitsInBudget(const std::string& what, long n) : Error(what), attempts(n) {}
};

}  // namespace radlab
