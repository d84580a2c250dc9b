#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace nlslab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-finite or otherwise malformed sample data.
class DataError : public Error {
 public:
  using Error::Error;
};

/// A negative-power multiplier met a nonzero mean mode.
class SingularModeError : public Error {
 public:
  using Error::Error;
};

/// |u|^p overflowed in the nonlinear substep; signals unresolved blowup.
class AmplitudeOverflowError : public Error {
 public:
  using Error::Error;
};

/// Convolution kernel |x|^{-s} is not locally integrable (s >= n).
class NonIntegrableKernelError : public Error {
 public:
  using Error::Error;
};

/// The requested quantity is defined only for a different parameter regime.
class InapplicableError : public Error {
 public:
  using Error::Error;
};

/// A result is not available for this run (for example after blowup).
class UnavailableError : public Error {
 public:
  using Error::Error;
};

/// Least-squares fit requested on degenerate data.
class DegenerateFitError : public Error {
 public:
  using Error::Error;
};

/// Configuration validation failure. Carries every violation found, not only
/// the first one.
class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<std::string> violations);

  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  std::vector<std::string> violations_;
};

}  // namespace nlslab
