#pragma once

#include <stdexcept>
#include <string>

namespace qchain {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotComposable : public Error {
 public:
  using Error::Error;
};

class DepthMismatch : public Error {
 public:
  using Error::Error;
};

/// A prefix (or table) is too short to resolve the requested evaluation.
class DepthTooSmall : public Error {
 public:
  using Error::Error;
};

class InvalidSpec : public Error {
 public:
  using Error::Error;
};

/// Requested horizon exceeds the configured depth cap.
class HorizonOverflow : public Error {
 public:
  using Error::Error;
};

class InvariantViolation : public Error {
 public:
  using Error::Error;
};

class SiteOutOfRange : public Error {
 public:
  using Error::Error;
};

class OrderUnsupported : public Error {
 public:
  using Error::Error;
};

class DegenerateSpectrum : public Error {
 public:
  using Error::Error;
};

}  // namespace qchain
