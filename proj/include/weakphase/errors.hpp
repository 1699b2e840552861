#pragma once

#include <stdexcept>
#include <string>

namespace weakphase {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input outside the domain of an operation (bad angle, non-positive length, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Failures of the numerical pipeline itself. The CLI maps these to exit code 2.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class DegenerateOverlap : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class GridTooNarrow : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class GridMismatch : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NotGaussian : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class ApproximationOutOfRange : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class EmptySpectrum : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class ShearNotOnGrid : public DomainError {
 public:
  using DomainError::DomainError;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// Carries the dotted path of the offending config field, e.g. "budget.sigma".
class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace weakphase
