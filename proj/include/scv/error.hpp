#pragma once

#include <stdexcept>
#include <string>

namespace scv {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Division by zero, mixed quadratic fields, invalid discriminant.
class FieldError : public Error {
 public:
  using Error::Error;
};

/// Malformed scalar strings or documents.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Shape mismatches, out-of-range indices, violated preconditions.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// ℓ = −h∨.
class CriticalLevelError : public DomainError {
 public:
  CriticalLevelError() : DomainError("critical level") {}
};

/// Structure constants fail one of the frame invariants.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A mode application would leave the truncated Fock space.
class CapExceededError : public Error {
 public:
  using Error::Error;
};

}  // namespace scv
