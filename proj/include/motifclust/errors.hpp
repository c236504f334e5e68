#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace motifclust {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text. line() is 1-based, 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Argument outside the mathematical domain of an operation
// (empty cut side, zero volume, dimension mismatch, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Request exceeds what an operation is built to handle (k too large,
// component too big for exhaustive search).
class CapabilityError : public Error {
 public:
  using Error::Error;
};

// Iterative eigensolver ran out of budget.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double best_residual)
      : Error(what + " (best residual " + std::to_string(best_residual) + ")"),
        best_residual_(best_residual) {}

  double best_residual() const noexcept { return best_residual_; }

 private:
  double best_residual_;
};

}  // namespace motifclust
