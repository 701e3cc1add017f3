#pragma once

#include <stdexcept>
#include <string>

namespace vidpipe {

// Base for everything this library throws.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input that retrying cannot fix (bad container, bad sidecar,
// bad service response).
class PermanentError : public Error {
 public:
  using Error::Error;
};

class FormatError : public PermanentError {
 public:
  using PermanentError::PermanentError;
};

// File shorter than its header claims.
class TruncationError : public PermanentError {
 public:
  using PermanentError::PermanentError;
};

class InvalidRangeError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Transient transport failure; the orchestrator retries these.
class TransportError : public Error {
 public:
  using Error::Error;
};

class BrokerError : public Error {
 public:
  using Error::Error;
};

}  // namespace vidpipe
