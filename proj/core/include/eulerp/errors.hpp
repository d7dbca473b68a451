#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace eulerp {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The internal error bound could not be brought below 10^-prec.
class PrecisionNotMet : public Error {
 public:
  using Error::Error;
};

/// Multiple zeta index whose outermost exponent makes the sum diverge.
class DivergentIndex : public DomainError {
 public:
  using DomainError::DomainError;
};

class InputError : public Error {
 public:
  using Error::Error;
};

class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t position)
      : InputError(what + " at position " + std::to_string(position)), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class SchemaError : public InputError {
 public:
  using InputError::InputError;
};

class Disconnected : public InputError {
 public:
  using InputError::InputError;
};

class TooLarge : public InputError {
 public:
  using InputError::InputError;
};

class NotPrimitive : public InputError {
 public:
  using InputError::InputError;
};

/// A Monte-Carlo integrand evaluation produced inf or nan.
class NonFiniteSample : public Error {
 public:
  using Error::Error;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

}  // namespace eulerp
