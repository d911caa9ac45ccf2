#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace solvlie {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or dimensionally inconsistent input.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Text-format failure, carrying the 1-based line it occurred on.
class ParseError : public InputError {
 public:
  ParseError(std::size_t line, const std::string& msg)
      : InputError("line " + std::to_string(line) + ": " + msg), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A structural hypothesis does not hold; `clause()` names it.
class ValidationError : public Error {
 public:
  ValidationError(std::string clause, const std::string& msg)
      : Error(clause + ": " + msg), clause_(std::move(clause)) {}
  const std::string& clause() const noexcept { return clause_; }

 private:
  std::string clause_;
};

/// Characteristic polynomial does not split over the rationals.
class NotRationalSplit : public Error {
 public:
  using Error::Error;
};

/// Rational spectrum, but eigenspaces do not span.
class NotDiagonalizable : public Error {
 public:
  using Error::Error;
};

/// Two routes that must agree by a proven identity disagree. Always a bug.
class TheoremViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace solvlie
