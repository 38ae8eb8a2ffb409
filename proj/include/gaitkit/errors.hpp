#pragma once

#include <stdexcept>
#include <string>

namespace gaitkit {

/// Base class for all gaitkit errors.
struct GaitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Input text does not conform to the expected schema (bad CSV header,
/// unparsable cell, non-monotonic timestamps).
struct MalformedInput : GaitError {
  using GaitError::GaitError;
};

/// Not enough data to proceed (all-null axis, overlap shorter than a
/// window, fewer samples than one window).
struct InsufficientData : GaitError {
  using GaitError::GaitError;
};

/// Calibration or pipeline configuration is invalid or incomplete.
struct ConfigError : GaitError {
  using GaitError::GaitError;
};

/// An array has the wrong length or dimensions.
struct ShapeError : GaitError {
  using GaitError::GaitError;
};

struct InvalidArgument : GaitError {
  using GaitError::GaitError;
};

/// A numerical routine failed (singular covariance after ridge, ...).
struct NumericalError : GaitError {
  using GaitError::GaitError;
};

/// An iterative solver did not converge; carries the class pair it was
/// working on.
struct ConvergenceError : GaitError {
  ConvergenceError(const std::string& msg, std::string a, std::string b)
      : GaitError(msg), class_a(std::move(a)), class_b(std::move(b)) {}
  std::string class_a;
  std::string class_b;
};

/// A class has too few instances to fill every fold; carries the class name.
struct StratificationError : GaitError {
  StratificationError(const std::string& msg, std::string cls)
      : GaitError(msg), class_name(std::move(cls)) {}
  std::string class_name;
};

/// Feature names of a matrix do not match the expected schema.
struct SchemaError : GaitError {
  using GaitError::GaitError;
};

}  // namespace gaitkit
