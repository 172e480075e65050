#pragma once

#include <stdexcept>
#include <string>

namespace brl {

// Failure categories. The CLI maps each to a distinct exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text (bad JSON, wrong field types).
class ParseError : public Error {
 public:
  using Error::Error;
};

// Well-formed input that violates a domain invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// NaN/Inf entries, inconsistent numerical verdicts.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace brl
