#pragma once

#include <stdexcept>
#include <string>

namespace spectral {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-contract input (dimension mismatch, non-finite
/// entries, point outside a domain).
class InputError : public Error {
 public:
  using Error::Error;
};

/// An enumeration or LP exceeded its configured budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// A projection had several minimizers where a unique one was required.
class AmbiguityError : public Error {
 public:
  using Error::Error;
};

/// A maximizer sat on the boundary of a search box, so the reported
/// supremum cannot be trusted.
class InconclusiveError : public Error {
 public:
  using Error::Error;
};

}  // namespace spectral
