#pragma once

#include <stdexcept>
#include <string>

namespace etoff {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Structural violation of a type invariant (shape, trace, completeness, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// An iterative decomposition failed to converge.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

class ZeroProbabilityOutcome : public Error {
 public:
  using Error::Error;
};

/// Entropy order outside the range where a noise/disturbance measure is defined.
class OrderOutOfRange : public Error {
 public:
  using Error::Error;
};

/// 1/alpha + 1/beta != 2 where a conjugate pair is required.
class ConstraintViolation : public Error {
 public:
  using Error::Error;
};

/// (relation, alpha, beta, d) is not covered by the requested trade-off relation.
class AdmissibilityError : public Error {
 public:
  using Error::Error;
};

/// A bound that is only stated for the standard decision was given another rule.
class RuleMismatch : public Error {
 public:
  using Error::Error;
};

class DegenerateObservable : public Error {
 public:
  using Error::Error;
};

}  // namespace etoff
