#pragma once

#include <stdexcept>
#include <string>

namespace qkit {

// Caller supplied something outside an operation's domain: bad shape, bad
// index, broken promise, capacity exceeded. The CLI maps these to exit code 2.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DimensionError : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

class ShapeError : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

class CapacityError : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

class PromiseError : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

// Unknown demo name or flag.
class UsageError : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

// A randomized procedure exhausted its retry budget.
class RetryLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A file could not be read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qkit
