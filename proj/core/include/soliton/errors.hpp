#pragma once

#include <stdexcept>
#include <string>

namespace soliton {

// Invalid parameters: out-of-range k, dimension mismatch, bad sample counts.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Input outside the domain of a formula: outside a cone, r <= 0, past an asymptote.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Two principal curvatures too close for the simple-eigenvalue second-derivative formula.
class DegenerateEigenvalueError : public DomainError {
 public:
  using DomainError::DomainError;
};

// A grid function left the barrier space X (denominator of the Picard integrand <= 0).
class XViolationError : public DomainError {
 public:
  using DomainError::DomainError;
};

class EmptyConeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ContractionFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed CSV or JSON input. line() is 1-based, 0 when not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  [[nodiscard]] int line() const { return line_; }

 private:
  int line_;
};

}  // namespace soliton
