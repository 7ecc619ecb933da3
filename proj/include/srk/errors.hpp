#pragma once

#include <stdexcept>
#include <string>

namespace srk {

/// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input rejected before any computation ran (bad shapes, bad knobs, bad files).
/// The CLI maps this family to exit code 1.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class InvalidValueError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class InvalidSparsityError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class UnsupportedVariantError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class SpecValidationError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class ParseError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Numerical failures discovered while computing.

class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

class DegenerateDistributionError : public Error {
 public:
  using Error::Error;
};

class ZeroRowError : public Error {
 public:
  using Error::Error;
};

class DegenerateMetricError : public Error {
 public:
  using Error::Error;
};

}  // namespace srk
