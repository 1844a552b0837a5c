#pragma once

#include <stdexcept>
#include <string>

namespace wpa {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input (group specs, function expressions, flags).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A size cap (element count, lattice order, degree, bit length) was hit.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// Certified arithmetic could not decide a comparison.
class Indeterminate : public Error {
 public:
  using Error::Error;
};

}  // namespace wpa
