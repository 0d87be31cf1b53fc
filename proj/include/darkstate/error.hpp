// error.hpp — exception types shared by the library and the CLI

#pragma once

#include <stdexcept>
#include <string>

namespace darkstate {

// Bad user input: non-physical parameter, unknown key, missing unit.
struct InvalidParameter : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Argument outside the domain a function is defined on.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// A numerical routine missed its tolerance. `achieved` is the error estimate it got to.
struct NumericalError : std::runtime_error {
    double achieved{0.0};
    NumericalError(const std::string& what, double achieved_error)
        : std::runtime_error(what), achieved(achieved_error) {}
};

struct DegenerateSteadyState : NumericalError {
    using NumericalError::NumericalError;
};

struct PositivityViolation : NumericalError {
    using NumericalError::NumericalError;
};

struct PeakNotFound : NumericalError {
    using NumericalError::NumericalError;
};

struct DegenerateSpectrum : NumericalError {
    using NumericalError::NumericalError;
};

} // namespace darkstate
