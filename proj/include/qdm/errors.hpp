#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qdm {

// Base of every error raised by the library. kind() is a short stable tag
// used in the CLI's machine-readable error line.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual std::string_view kind() const noexcept = 0;
};

// Invalid parameters or inputs (negative widths, inconsistent regime, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
  std::string_view kind() const noexcept override { return "validation"; }
};

// A current spec or coherence pair that does not belong to the state space.
class SpecError : public Error {
 public:
  using Error::Error;
  std::string_view kind() const noexcept override { return "spec"; }
};

class NoUniqueSteadyState : public Error {
 public:
  NoUniqueSteadyState(const std::string& what, std::size_t null_dim)
      : Error(what), null_dim_(null_dim) {}
  std::string_view kind() const noexcept override { return "no-unique-steady-state"; }
  std::size_t null_space_dimension() const noexcept { return null_dim_; }

 private:
  std::size_t null_dim_;
};

class IntegrationFailure : public Error {
 public:
  IntegrationFailure(const std::string& what, double time);
  std::string_view kind() const noexcept override { return "integration"; }
  double time() const noexcept { return time_; }

 private:
  double time_;
};

class FitError : public Error {
 public:
  using Error::Error;
  std::string_view kind() const noexcept override { return "fit"; }
};

// Config text problems. line() is 1-based, 0 when the error is not tied to a line.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& what, std::size_t line = 0);
  std::string_view kind() const noexcept override { return "config"; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class IoError : public Error {
 public:
  using Error::Error;
  std::string_view kind() const noexcept override { return "io"; }
};

}  // namespace qdm
