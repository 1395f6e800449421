#pragma once

#include <stdexcept>
#include <string>

namespace sgprime {

// Base of every error the library throws. The CLI maps these onto exit codes:
// anything derived from UsageError exits 2, everything else exits 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller supplied something outside an operation's contract.
class UsageError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public UsageError {
 public:
  using UsageError::UsageError;
};

class ArgumentError : public UsageError {
 public:
  using UsageError::UsageError;
};

// Query beyond the range a table or budget covers.
class RangeError : public UsageError {
 public:
  using UsageError::UsageError;
};

// Mathematical precondition violated (p not in D_lambda, gcd > 1, ...).
class DomainError : public UsageError {
 public:
  using UsageError::UsageError;
};

// 64-bit overflow. Never wrapped silently.
class ArithmeticError : public Error {
 public:
  using Error::Error;
};

// A constructive search came up empty inside its admissible window.
class DecompositionError : public Error {
 public:
  using Error::Error;
};

}  // namespace sgprime
