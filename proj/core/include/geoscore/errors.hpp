#ifndef GEOSCORE_ERRORS_HPP
#define GEOSCORE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace geoscore {

/// Base class of every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid or degenerate geometry (non-finite coordinate, zero-area ring,
/// self-intersecting exterior, ...).
class GeometryError : public Error {
 public:
  using Error::Error;
};

/// Point outside the local projection validity window.
class ExtentError : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

/// Syntactically broken input document. The message carries the byte
/// offset when the underlying parser provides one.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Well-formed input that violates the expected schema or a record
/// invariant. Messages name the offending feature index.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Bad run configuration: missing paths, non-positive thresholds,
/// malformed regex.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Duplicate tile ids inside one input directory.
class TileConflictError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

/// Unknown node or edge id passed to a graph query.
class LookupError : public Error {
 public:
  using Error::Error;
};

}  // namespace geoscore

#endif  // GEOSCORE_ERRORS_HPP
