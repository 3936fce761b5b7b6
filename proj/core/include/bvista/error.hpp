#pragma once

#include <stdexcept>
#include <string>

namespace bvista {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (bad dimensions, channel
/// count, mismatched lengths, ...).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// An input sequence that must be non-empty was empty.
class EmptyInputError : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

/// The data carries no usable signal: zero variance samples, one-sided
/// samples, zero-norm embeddings, constant frames, all-equal statistics.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

/// Not enough pristine material to fit a model.
class CorpusTooSmallError : public Error {
 public:
  using Error::Error;
};

/// Correlation requested on constant input.
class UndefinedCorrelationError : public Error {
 public:
  using Error::Error;
};

/// Fewer scored items than a statistic needs.
class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

/// Malformed file contents or unreadable file.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace bvista
