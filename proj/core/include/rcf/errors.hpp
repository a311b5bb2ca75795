#pragma once

#include <stdexcept>
#include <string>

namespace rcf {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A map image left the representable range (x^alpha underflow, r/x^alpha overflow).
class OverflowError : public Error {
 public:
  using Error::Error;
};

class InvalidSeed : public Error {
 public:
  using Error::Error;
};

class EntropyFailure : public Error {
 public:
  using Error::Error;
};

class BufferSizeError : public Error {
 public:
  using Error::Error;
};

/// An orbit needed more fresh starting points than the configured cap allows.
class ResampleLimit : public Error {
 public:
  using Error::Error;
};

/// A statistic is undefined because the sample has zero variance.
class DegenerateSample : public Error {
 public:
  using Error::Error;
};

}  // namespace rcf
