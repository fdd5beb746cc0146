#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ortho {

enum class ErrorKind {
  Shape,           // dimension / arity mismatch
  Span,            // point outside the span of a frame
  Independence,    // vectors are linearly dependent
  Generation,      // rejection sampling exhausted its attempt budget
  Symmetry,        // Gram matrix is not symmetric
  Definiteness,    // Gram matrix has a non-positive leading minor
  ZeroDenominator, // <a,a> = 0 in the coefficient formula
  Precondition,    // an operation's stated precondition does not hold
  Index,           // functional index out of range
  NoViolation,     // witness requested for an already orthogonal pair
  Parse,           // malformed JSON or literal
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised by Gram validation; `minor()` is the 1-based order of the first
/// leading principal minor that is not strictly positive.
class DefinitenessError : public Error {
 public:
  DefinitenessError(std::size_t minor, const std::string& what)
      : Error(ErrorKind::Definiteness, what), minor_(minor) {}

  std::size_t minor() const noexcept { return minor_; }

 private:
  std::size_t minor_;
};

/// Parse failures carry a location: a JSON pointer or a byte offset.
class ParseError : public Error {
 public:
  ParseError(std::string location, const std::string& what)
      : Error(ErrorKind::Parse, location.empty() ? what : location + ": " + what),
        location_(std::move(location)),
        detail_(what) {}

  const std::string& location() const noexcept { return location_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::string location_;
  std::string detail_;
};

}  // namespace ortho
