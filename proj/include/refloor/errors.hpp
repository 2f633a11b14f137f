#pragma once

#include <stdexcept>
#include <string>

namespace refloor {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed input structure (dangling ids, unknown references).
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// A specialization at q = -1 met a half-integer exponent.
class HalfIntegerExponentError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Malformed serialized data.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace refloor
