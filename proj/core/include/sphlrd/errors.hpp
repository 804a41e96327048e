#pragma once

#include <stdexcept>
#include <string>

namespace sphlrd {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A numeric parameter outside its admissible range.
class InvalidParameter : public Error {
public:
  using Error::Error;
};

/// ARMA root condition or LRD profile invariant violated.
class InvalidModel : public Error {
public:
  using Error::Error;
};

/// Spectral density requested at omega = 0 on a long-memory scale.
class SingularFrequency : public Error {
public:
  using Error::Error;
};

/// An operation received a table of the wrong kind.
class ContractError : public Error {
public:
  using Error::Error;
};

/// Malformed or non-finite input data.
class DataError : public Error {
public:
  using Error::Error;
};

/// Bad scenario / plan / CLI configuration.
class ConfigError : public Error {
public:
  using Error::Error;
};

}  // namespace sphlrd
