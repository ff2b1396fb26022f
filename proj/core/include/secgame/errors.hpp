#pragma once

#include <stdexcept>
#include <string>

namespace secgame {

/// Base class for all errors raised by the library. Input-shaped problems
/// (bad files, bad parameters) derive from InputError; everything else means
/// an internal numerical or resource failure.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InputError : public Error {
 public:
  using Error::Error;
};

/// Malformed file or vector string.
class SyntaxError : public InputError {
 public:
  using InputError::InputError;
};

/// Structurally well-formed input that violates a domain invariant.
class ValidationError : public InputError {
 public:
  using InputError::InputError;
};

/// Enumeration bound exceeded (strategy spaces too large to solve exactly).
class SizeLimitError : public InputError {
 public:
  using InputError::InputError;
};

/// Check node outside the configured inspectable set.
class InvalidCheckError : public InputError {
 public:
  using InputError::InputError;
};

/// Scoring vector misses a metric required by the requested score.
class MissingMetricError : public InputError {
 public:
  using InputError::InputError;
};

/// Scoring weight configuration outside the admissible range.
class BadWeightConfigError : public InputError {
 public:
  using InputError::InputError;
};

/// Solver failed to reach optimality within its iteration budget, or the
/// result failed post-verification.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Iterative eigensolver exceeded its sweep budget.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace secgame
