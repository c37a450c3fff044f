// errors.hpp — Exception types shared across the library

#pragma once

#include <stdexcept>
#include <string>

namespace resonet {

// Invalid user input: network, reservoir, state or scenario parameters.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A physical model that cannot drive a valid Lindblad generator
// (e.g. a decay matrix that is not positive semidefinite).
class InvalidModelError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

// Fock cutoff too small for the requested coherent amplitudes.
class CutoffError : public ConfigError {
public:
    CutoffError(const std::string& what, int required)
        : ConfigError(what), required_cutoff(required) {}
    int required_cutoff;
};

// Numerical failure during evaluation or integration (trace drift,
// eigensolver non-convergence, positivity loss).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace resonet
