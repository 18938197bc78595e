#pragma once

#include <stdexcept>
#include <string>

namespace vfinv {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed expression text; `position` is a byte offset into the input.
struct ParseError : Error {
  ParseError(const std::string& msg, std::size_t pos)
      : Error(msg + " (at position " + std::to_string(pos) + ")"), position(pos) {}
  std::size_t position;
};

// Out-of-range dimension, index, derivative order, or similar bad argument.
struct DomainError : Error {
  using Error::Error;
};

// Numeric evaluation failed: unassigned variable, vanishing denominator,
// or an argument outside a function's domain.
struct EvalError : Error {
  using Error::Error;
};

// Exact symbolic division by zero (denominator normalizes to the zero polynomial).
struct DivisionByZero : Error {
  DivisionByZero() : Error("division by zero") {}
  explicit DivisionByZero(const std::string& msg) : Error(msg) {}
};

// Input object has the wrong shape for the requested operation
// (e.g. an operator coefficient that is not linear in the xi symbols).
struct StructureError : Error {
  using Error::Error;
};

// Two independent computations of the same quantity disagreed.  This is a bug
// in the library (or a miscompiled build), never a user error.
struct InternalInconsistency : Error {
  using Error::Error;
};

}  // namespace vfinv
