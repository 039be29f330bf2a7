#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace umbra {

// Common base so callers can catch everything this library throws.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Multiplicative inverse of a series with zero constant term.
struct NotInvertible : Error {
  using Error::Error;
};

// Compositional operation on a series whose order is not 1.
struct NotDelta : Error {
  using Error::Error;
};

// compose(f, g) with g having a nonzero constant term.
struct CompositionUndefined : Error {
  using Error::Error;
};

// divide_by_x on a polynomial with nonzero constant term, or divide_by_t
// on a series of insufficient order.
struct NotDivisible : Error {
  using Error::Error;
};

// An operation was asked to read coefficients beyond the stored truncation.
struct TruncationError : Error {
  using Error::Error;
};

// Bad family / identity parameters (zero where nonzero demanded, etc.).
struct BadParams : Error {
  using Error::Error;
};

struct UnknownIdentity : Error {
  using Error::Error;
};

// DSL parse failure; position is a byte offset into the input.
struct ParseError : Error {
  ParseError(const std::string& what, std::size_t pos)
      : Error(what + " (at offset " + std::to_string(pos) + ")"), position(pos) {}
  std::size_t position;
};

// DSL evaluation failure.
struct EvalError : Error {
  using Error::Error;
};

struct DivisionByNonInvertible : EvalError {
  using EvalError::EvalError;
};

struct UnboundParameter : EvalError {
  using EvalError::EvalError;
};

}  // namespace umbra
