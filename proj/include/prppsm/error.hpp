#pragma once

#include <stdexcept>
#include <string>

namespace prppsm {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not agree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A linear system could not be factorized (pivot below threshold).
class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

/// Exhaustive ML search would exceed the configured hypothesis cap.
class MlInfeasibleError : public Error {
 public:
  using Error::Error;
};

/// Invalid user-supplied configuration or argument value.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace prppsm
