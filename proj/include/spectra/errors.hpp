#pragma once

#include <stdexcept>
#include <string>

namespace spectra {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An operation was called outside its documented domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Two inputs live in different ambient groups, or an operation was asked
// for the wrong group kind.
class GroupMismatch : public Error {
 public:
  using Error::Error;
};

// An exhaustive enumeration would exceed its configured budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// Floating point evaluation drifted too far from an integer-valued result.
class NumericFailure : public Error {
 public:
  using Error::Error;
};

class NotInvertible : public Error {
 public:
  using Error::Error;
};

// A randomized search ran out of retries.
class RetriesExhausted : public Error {
 public:
  using Error::Error;
};

}  // namespace spectra
