#pragma once

#include <stdexcept>
#include <string>

namespace polytri {

// Base class for every error thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Malformed input that violates a structural precondition (wrong sizes,
// non-square matrix, bad label, ...).
class StructuralError : public Error {
public:
  using Error::Error;
};

// Input that is syntactically fine but geometrically degenerate
// (not full-dimensional, repeated points, zero-volume simplex, ...).
class DegeneracyError : public Error {
public:
  using Error::Error;
};

// A randomized/perturbed construction failed its exact genericity checks
// even after the retry schedule.
class GenericityError : public Error {
public:
  using Error::Error;
};

// A constructed simplex family failed validation although the construction
// promises a particular status.
class ValidationError : public Error {
public:
  using Error::Error;
};

// Text input could not be parsed; carries a 1-based line number when known.
class ParseError : public Error {
public:
  explicit ParseError(const std::string& msg, long line = -1)
      : Error(line >= 0 ? "line " + std::to_string(line) + ": " + msg : msg),
        line_(line) {}
  long line() const { return line_; }

private:
  long line_;
};

// Broken internal invariant: indicates a bug, not a user error.
class InternalError : public Error {
public:
  using Error::Error;
};

}  // namespace polytri
