#pragma once

#include <stdexcept>
#include <string>

namespace weinstein {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid argument: out-of-range parameter, bad extents, negative exponent.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Two operands live on different grids, or array shapes disagree.
class GridMismatch : public Error {
 public:
  using Error::Error;
};

/// A numeric guard tripped: dense-sum size limit, non-integrable sigma region,
/// non-decaying sigma tail.
class NumericGuardError : public Error {
 public:
  using Error::Error;
};

/// Experiment configuration failed validation.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace weinstein
