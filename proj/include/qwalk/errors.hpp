#pragma once

#include <stdexcept>
#include <string>

namespace qwalk {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Caller passed a value outside an operation's domain (non-finite angle,
/// negative intensity, malformed setting label, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// A numerical contract of the model does not hold for the given input.
/// The CLI maps every subclass to exit code 3.
class NumericalError : public Error {
public:
    using Error::Error;
};

class DegenerateState : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class GapClosed : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class NonConvergence : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class SingularCoin : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class ZeroVector : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class PlanningInfeasible : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class IsolationViolation : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class VanishingComponent : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class InconsistentIntensities : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Bad configuration file or command-line override (CLI exit code 2).
class ConfigError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace qwalk
