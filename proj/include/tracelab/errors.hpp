#pragma once

#include <stdexcept>
#include <string>

namespace tracelab {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed text in one of the exchange formats.
class ParseError : public Error {
public:
  using Error::Error;
};

/// An operation's stated precondition does not hold for its inputs.
class PreconditionError : public Error {
public:
  using Error::Error;
};

class DivisionByZero : public PreconditionError {
public:
  DivisionByZero() : PreconditionError("division by zero") {}
};

/// Arithmetic between two different quadratic fields.
class FieldMismatch : public PreconditionError {
public:
  using PreconditionError::PreconditionError;
};

/// Coprimality requested in a ring without a Euclidean division.
class UnsupportedRing : public PreconditionError {
public:
  using PreconditionError::PreconditionError;
};

} // namespace tracelab
