#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace casimir {

// Base class for every error raised by the library. The CLI maps
// NumericalError subclasses to exit code 2 and everything else to 1.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DomainError : public Error {
public:
  using Error::Error;
};

class UnsupportedVariantError : public Error {
public:
  using Error::Error;
};

// epsilon == 1: no material contrast, the reflection factor is infinite.
class VacuumDegeneracyError : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

class NumericalError : public Error {
public:
  using Error::Error;
};

// Carries the best estimate available when the iteration stopped.
class NonConvergenceError : public NumericalError {
public:
  NonConvergenceError(const std::string& what, double partial, double err)
      : NumericalError(what), partial_(partial), error_(err) {}

  double partial_value() const noexcept { return partial_; }
  double error_estimate() const noexcept { return error_; }

private:
  double partial_;
  double error_;
};

class DivergenceError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class SingularityError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class BracketingError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class StepTooLargeError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

} // namespace casimir
