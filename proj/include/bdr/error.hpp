#pragma once

#include <stdexcept>
#include <string>

namespace bdr {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Network generation could not meet its target (e.g. degree unreachable).
class GenerationError : public Error {
 public:
  using Error::Error;
};

// Geometric input the arrangement builder refuses to resolve.
class DegeneracyError : public Error {
 public:
  using Error::Error;
};

class EmbeddingError : public Error {
 public:
  using Error::Error;
};

// Invalid user-provided configuration or malformed input file.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace bdr
