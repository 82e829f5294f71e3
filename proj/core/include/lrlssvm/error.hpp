#pragma once

#include <stdexcept>
#include <string>

namespace lrlssvm {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid configuration or argument (bad flag values, out-of-range knobs).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Malformed, missing, or inconsistent input data.
class DataError : public Error {
public:
    using Error::Error;
};

/// Singular systems, divergence, conditioning failures.
class NumericalError : public Error {
public:
    using Error::Error;
};

} // namespace lrlssvm
