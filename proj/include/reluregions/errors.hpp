#pragma once

#include <stdexcept>
#include <string>

namespace reluregions {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed input documents (network JSON, DIMACS files, rational literals).
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& msg) : Error(msg) {}
};

/// Structurally invalid data or violated preconditions (shape mismatches,
/// out-of-range parameters, unsupported architectures).
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& msg) : Error(msg) {}
};

/// A configured work ceiling was exceeded (pattern budget, LP budget, or a
/// search universe larger than the permitted cap).  Signals "instance too
/// large for the configured limits", not a wrong answer.
class ResourceLimitError : public Error {
 public:
  explicit ResourceLimitError(const std::string& msg) : Error(msg) {}
};

/// An internal invariant failed.  Always a bug in this library.
class InternalError : public Error {
 public:
  explicit InternalError(const std::string& msg) : Error(msg) {}
};

}  // namespace reluregions
