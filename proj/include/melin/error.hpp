#pragma once

#include <stdexcept>
#include <string>

namespace melin {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// A level carries a monomial of lower transverse degree than its grading allows.
class VanishingOrderViolation : public Error {
 public:
  using Error::Error;
};

/// The Hessian is not positive semidefinite, or its Hamilton map has
/// eigenvalues off the imaginary axis.
class HypothesisViolation : public Error {
 public:
  using Error::Error;
};

class NotHermitian : public Error {
 public:
  using Error::Error;
};

/// Lowest eigenvalue increased when the truncation grew.
class MonotonicityViolation : public Error {
 public:
  using Error::Error;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

}  // namespace melin
