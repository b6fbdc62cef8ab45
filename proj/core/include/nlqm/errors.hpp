#pragma once

#include <stdexcept>
#include <string>

namespace nlqm {

// Base for every error the library raises. Subclasses deriving from
// NumericError signal failures of a computation on valid input; the rest
// signal invalid input or configuration.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// |β| or |α| exceeds the amplitude the Fock truncation was sized for.
class TruncationError : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class NumericError : public Error {
 public:
  using Error::Error;
};

class IntegrationDiverged : public NumericError {
 public:
  IntegrationDiverged(const std::string& what, double time)
      : NumericError(what), time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

class SolverError : public NumericError {
 public:
  SolverError(const std::string& what, double last_energy)
      : NumericError(what), last_energy_(last_energy) {}
  double last_energy() const noexcept { return last_energy_; }

 private:
  double last_energy_;
};

class FitError : public NumericError {
 public:
  using NumericError::NumericError;
};

class InsufficientData : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace nlqm
