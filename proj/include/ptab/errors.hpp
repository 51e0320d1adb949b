#pragma once

#include <stdexcept>
#include <string>

namespace ptab {

/// Base class of every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input/format errors.
class SyntaxError : public Error {
 public:
  using Error::Error;
};
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Table and factorization errors.
class InvalidWeights : public Error {
 public:
  using Error::Error;
};
class DegenerateTable : public Error {
 public:
  using Error::Error;
};
class SingularBasis : public Error {
 public:
  using Error::Error;
};
class InconsistentRank : public Error {
 public:
  using Error::Error;
};
class InconsistentTable : public Error {
 public:
  using Error::Error;
};
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// Geometry / search errors.
class SolverFailure : public Error {
 public:
  using Error::Error;
};
class MixedMeasurements : public Error {
 public:
  using Error::Error;
};
class SearchBudgetExceeded : public Error {
 public:
  using Error::Error;
};
class NotDistinguishable : public Error {
 public:
  using Error::Error;
};

// Map errors.
class OutOfDomain : public Error {
 public:
  using Error::Error;
};

// Quantum model errors.
class NotHermitian : public Error {
 public:
  using Error::Error;
};
class NotSpanning : public Error {
 public:
  using Error::Error;
};
class InvalidModel : public Error {
 public:
  using Error::Error;
};

}  // namespace ptab
