#pragma once

#include <stdexcept>
#include <string>

namespace cantor {

// Exit codes used by the command line front end. Every library error maps to
// exactly one of these.
enum class ExitCode : int {
  ok = 0,
  domain = 2,
  budget = 3,
  integrity = 4,
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual ExitCode exit_code() const noexcept = 0;
};

// Precondition violated: bad argument, unsupported digit system, etc.
class DomainError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const noexcept override { return ExitCode::domain; }
};

// Requested data is not available (records missing for part of a window).
class CoverageError : public DomainError {
 public:
  using DomainError::DomainError;
};

// A computation would exceed its configured work limit.
class BudgetError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const noexcept override { return ExitCode::budget; }
};

// Persistent data is inconsistent: conflicting records, bad schema, torn file.
class IntegrityError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const noexcept override { return ExitCode::integrity; }
};

}  // namespace cantor
