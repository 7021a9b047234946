#pragma once

#include <stdexcept>
#include <string>

namespace ivx {

// Base of the toolkit's error taxonomy. Subclasses map onto CLI exit codes:
// parse errors -> 2, domain errors -> 3, missing calibration -> 4.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed user input: distribution specs, sample files, option values.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Anything that violates a mathematical precondition at run time.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A truncation window carrying no probability (or empirical) mass.
class DegenerateWindowError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Tied observations collapse an m-spacing to zero width.
class TieError : public DomainError {
 public:
  using DomainError::DomainError;
};

// The model has no implemented closed form for the requested measure.
class NoClosedFormError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Sample too small or constant where a spread is required.
class DegenerateSampleError : public DomainError {
 public:
  using DomainError::DomainError;
};

// An exponential-family description that does not reproduce the model density.
class InconsistentSpecError : public DomainError {
 public:
  using DomainError::DomainError;
};

// A test decision was requested without a calibrated critical value.
class CalibrationRequiredError : public Error {
 public:
  using Error::Error;
};

}  // namespace ivx
