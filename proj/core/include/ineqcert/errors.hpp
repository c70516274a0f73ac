#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ineqcert {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input or settings (bad interval, precision too low, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " at position " + std::to_string(position)),
        position_(position) {}

  /// 0-based character offset of the offending token (input length for an
  /// unexpected end of input).
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class UnknownIdentifierError : public ParseError {
 public:
  UnknownIdentifierError(const std::string& name, std::size_t position)
      : ParseError("unknown identifier '" + name + "'", position), name_(name) {}

  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

/// Evaluation outside the natural domain of an operation (log of a non-positive
/// number, arcsin beyond [-1, 1], division by zero, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Quadrature could not reach the requested accuracy within its node budget.
class QuadratureError : public Error {
 public:
  using Error::Error;
};

}  // namespace ineqcert
