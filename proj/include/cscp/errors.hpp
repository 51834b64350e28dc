#pragma once

#include <stdexcept>
#include <string>

namespace cscp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A value violated a domain-type invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Input text did not follow the expected file format.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// A mining or generator configuration is out of range.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A stream or file could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Confidence requested for an antecedent that never occurs.
class UndefinedConfidenceError : public Error {
 public:
  using Error::Error;
};

/// Synthetic generation could not satisfy the non-empty transaction rule.
class GenerationError : public Error {
 public:
  using Error::Error;
};

}  // namespace cscp
