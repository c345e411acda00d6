#pragma once

#include <stdexcept>

namespace mcarfima {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter lies outside its admissible range (d, theta, scales, lengths).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The assembled innovation covariance matrix is not positive semi-definite.
class NotPositiveSemiDefinite : public Error {
 public:
  using Error::Error;
};

/// Input series has zero variance, so a correlation is undefined.
class DegenerateSeries : public Error {
 public:
  using Error::Error;
};

/// Too few usable scales or points to fit a scaling law.
class InsufficientData : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent experiment configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace mcarfima
