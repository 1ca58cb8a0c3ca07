#pragma once

#include <stdexcept>
#include <string>

namespace damped_euler {

/// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of a function (u <= 0, t < 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The specific volume left the admissible range: u <= u_floor, or the
/// Riemann pair cannot be inverted. Distinct from gradient blow-up.
class VacuumError : public Error {
 public:
  using Error::Error;
};

/// A field became non-finite.
class InstabilityError : public Error {
 public:
  using Error::Error;
};

/// An improper integral did not converge within the quadrature budget.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

/// Characteristic tracing asked for levels that were not retained.
class MissingHistoryError : public Error {
 public:
  using Error::Error;
};

/// Closed-form Riccati solution evaluated at its pole.
class PoleError : public Error {
 public:
  using Error::Error;
};

/// Reciprocal extrapolation or scaling fit could not be carried out.
class FitError : public Error {
 public:
  using Error::Error;
};

/// A file could not be written or read; the message names the path.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Configuration text is malformed or fails validation. `where` is either
/// "line N" (parse errors) or a dotted key path (validation errors).
class ConfigError : public Error {
 public:
  ConfigError(std::string where, const std::string& what)
      : Error(where + ": " + what), where_(std::move(where)) {}

  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

}  // namespace damped_euler
