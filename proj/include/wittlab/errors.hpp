#pragma once

#include <stdexcept>
#include <string>

namespace wittlab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input: bad spec, bad instance descriptor, shape mismatch.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Operands belong to different local rings / coefficient rings.
class MismatchError : public InputError {
 public:
  using InputError::InputError;
};

/// A π-adic precision budget was exhausted.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

/// Division by π^n requested for an element of valuation < n.
class ValuationError : public Error {
 public:
  using Error::Error;
};

/// Inverse requested for an element of positive valuation.
class NonUnitError : public Error {
 public:
  using Error::Error;
};

/// Ghost inversion hit a non-exact division. Always a solver bug or an
/// under-budgeted precision, never truncated silently.
class IntegralityError : public Error {
 public:
  using Error::Error;
};

/// BoundedPoly product would exceed the configured degree cap.
class DegreeCapError : public Error {
 public:
  using Error::Error;
};

/// Truncated Witt vector too short for the requested operation.
class LengthError : public Error {
 public:
  using Error::Error;
};

/// Operation needs a capability the coefficient ring does not have
/// (q-th roots on a non-perfect ring, enumeration of an infinite one, ...).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

}  // namespace wittlab
