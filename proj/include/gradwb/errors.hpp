#ifndef GRADWB_ERRORS_HPP
#define GRADWB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gw {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent user input (deck syntax, bad arguments, violated preconditions).
class InputError : public Error {
 public:
  using Error::Error;
};

class ArithmeticError : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public ArithmeticError {
 public:
  DivisionByZero() : ArithmeticError("division by zero") {}
};

/// Raised when a nonzero element of an extension field turns out to be non-invertible.
class ReducibleModulus : public ArithmeticError {
 public:
  using ArithmeticError::ArithmeticError;
};

class FactorizationIncomplete : public Error {
 public:
  using Error::Error;
};

class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// The requested object is infinite or cannot be listed with the available algorithms.
class NotEnumerable : public Error {
 public:
  using Error::Error;
};

/// A mathematical identity that must hold failed. Always indicates a defect, never bad input.
class IdentityViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace gw

#endif  // GRADWB_ERRORS_HPP
