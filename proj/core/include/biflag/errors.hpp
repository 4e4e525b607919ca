#pragma once

#include <stdexcept>
#include <string>

namespace biflag {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Input outside the model's domain or a violated precondition.
class DomainError : public Error {
public:
  using Error::Error;
};

/// ln(4 lambda / d) too small for the slender-body drag estimates.
class SingularityError : public DomainError {
public:
  using DomainError::DomainError;
};

/// The closed-form speed only covers geometrically identical flagella.
class AsymmetryError : public DomainError {
public:
  using DomainError::DomainError;
};

/// A configuration value failed validation; key() is the dotted config path.
class ConfigError : public DomainError {
public:
  ConfigError(std::string key, const std::string& what)
      : DomainError(key.empty() ? what : what + " for key " + key), key_(std::move(key)) {}

  const std::string& key() const noexcept { return key_; }

private:
  std::string key_;
};

/// A numerical procedure could not produce a result.
class NumericalError : public Error {
public:
  using Error::Error;
};

/// Root search interval does not bracket a sign change.
class BracketError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

/// Quantities that cannot be simultaneously valid (e.g. useful power without input power).
class InconsistencyError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

}  // namespace biflag
