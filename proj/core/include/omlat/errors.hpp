#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace omlat {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid configuration or mismatched inputs.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Blow-up, non-convergence or a degenerate noise operator.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class IntegrationError : public NumericalError {
 public:
  IntegrationError(const std::string& what, std::size_t step)
      : NumericalError(what), step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

/// Some q_i(t) vanishes on the grid, so Q(t)^{-1} does not exist.
class DegeneracyError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// A Monte Carlo event was hit too rarely to estimate anything.
class StatisticalPowerError : public Error {
 public:
  using Error::Error;
};

}  // namespace omlat
