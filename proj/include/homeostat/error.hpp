#pragma once

#include <stdexcept>
#include <string>

namespace homeostat {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Layer sizes, matrix shapes or per-layer assignments disagree.
class TopologyError : public Error {
public:
    using Error::Error;
};

/// An encoder input fell outside [0, 1].
class InputRangeError : public Error {
public:
    using Error::Error;
};

/// A rate was requested over zero timesteps.
class EmptyTrialError : public Error {
public:
    using Error::Error;
};

/// A weight update produced NaN or Inf.
class NumericError : public Error {
public:
    using Error::Error;
};

/// Invalid or unknown configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Base and degraded trial records cannot be paired.
class PairingError : public Error {
public:
    using Error::Error;
};

/// Malformed checkpoint, CSV or report file.
class ParseError : public Error {
public:
    using Error::Error;
};

} // namespace homeostat
