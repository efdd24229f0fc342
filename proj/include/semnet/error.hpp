#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace semnet {

// Root of every error raised by the library. The CLI maps any Error that
// escapes a subcommand to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed text input. Line and column are 1-based; 0 means "not known".
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, std::size_t line, std::size_t column = 0);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// A term or triple violates the data-model constraints (e.g. literal subject).
class ConstraintError : public Error {
 public:
  using Error::Error;
};

// A reasoner exceeded its configured derivation cap.
class ResourceLimitError : public Error {
 public:
  using Error::Error;
};

// Syllogism premises do not share the term the rule requires.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// A computation is mathematically undefined for the given input
// (zero variance, self-inheritance conclusion, ...).
class DegenerateError : public Error {
 public:
  using Error::Error;
};

// Graph does not meet an algorithm's structural precondition.
class StructureError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// Unknown vertex index, missing tensor slice, unknown grammar node.
class LookupError : public Error {
 public:
  using Error::Error;
};

// Invalid parameters or configuration files (grammar, run settings).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Ill-typed path expression, e.g. complement of a counting subexpression.
class TypeError : public Error {
 public:
  using Error::Error;
};

}  // namespace semnet
