#pragma once

#include <stdexcept>
#include <string>

namespace jhi {

// Base of every error raised by the library. Numerical failures and
// configuration problems are kept in separate branches so callers (the CLI in
// particular) can map them to distinct exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

class ConfigurationError : public Error {
 public:
  using Error::Error;
};

// Requested operation is not available for this model or order.
class CapabilityError : public Error {
 public:
  using Error::Error;
};

class SingularSeriesError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class DomainError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class TruncationOrderError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class EvaluationError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// t = 0 reached where the scale coordinate must be nonzero.
class SingularScaleError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Homogeneity action requested with z = 0.
class InvalidScaleError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class LiftError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NonConvergenceError : public NumericalError {
 public:
  NonConvergenceError(const std::string& what, double last_residual)
      : NumericalError(what), last_residual_(last_residual) {}
  double last_residual() const { return last_residual_; }

 private:
  double last_residual_;
};

class DegenerateStepError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace jhi
