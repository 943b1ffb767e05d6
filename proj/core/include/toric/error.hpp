#pragma once

#include <stdexcept>
#include <string>

namespace toric {

// Base of every error raised by the library. Domain errors (bad input for an
// otherwise well-formed request) and parse errors are kept apart so the CLI
// can map them to different exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public DomainError {
 public:
  using DomainError::DomainError;
};

class BoundError : public DomainError {
 public:
  using DomainError::DomainError;
};

class OverflowError : public DomainError {
 public:
  using DomainError::DomainError;
};

class BudgetError : public DomainError {
 public:
  using DomainError::DomainError;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace toric
