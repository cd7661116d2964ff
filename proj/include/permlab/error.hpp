#pragma once

#include <stdexcept>
#include <string>

namespace permlab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotABijection : public Error {
public:
    using Error::Error;
};

class TieDetected : public Error {
public:
    using Error::Error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// A count does not fit in 64 bits.
class Overflow : public Error {
public:
    using Error::Error;
};

class EnumerationLimit : public Error {
public:
    using Error::Error;
};

class InsufficientReplicas : public Error {
public:
    using Error::Error;
};

/// n * reps exceeds the configured work cap.
class ResourceLimit : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace permlab
