#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace klorentz {

/// Operand shapes do not fit together (vector length, matrix size, cone dimension).
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An operation's documented precondition does not hold for the given input.
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A theorem-specific hypothesis (nonsingularity, signature, connected rays) is violated.
class HypothesisError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// Text input (polynomial grammar, rationals, cone specs) could not be parsed.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : std::runtime_error(message + " at line " + std::to_string(line) + ", column " +
                           std::to_string(column)),
        line_(line),
        column_(column) {}
  explicit ParseError(const std::string& message)
      : std::runtime_error(message), line_(0), column_(0) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace klorentz
