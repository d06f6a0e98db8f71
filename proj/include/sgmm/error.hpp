#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sgmm {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument violates the documented precondition of an operation.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A choice function violates one of its axioms.
class AxiomViolation : public Error {
 public:
  using Error::Error;
};

/// Exhaustive work would exceed the configured cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// A structural property that must hold for valid input failed at runtime.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace sgmm
