// Exception hierarchy.

#pragma once

#include <stdexcept>
#include <string>

namespace nonmark {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid user input: bad parameters, violated preconditions, malformed files.
class InputError : public Error {
public:
    using Error::Error;
};

/// Argument outside the domain of a function (e.g. negative time).
class DomainError : public InputError {
public:
    using InputError::InputError;
};

/// A numerical procedure could not produce a trustworthy result.
class NumericError : public Error {
public:
    using Error::Error;
};

/// Evaluation at (or numerically indistinguishable from) a pole of a rate.
class PoleError : public NumericError {
public:
    PoleError(const std::string& what, double location)
        : NumericError(what), location_(location) {}
    double location() const noexcept { return location_; }

private:
    double location_;
};

/// The integrator produced a state that violates the density-matrix invariants.
class IntegrationError : public NumericError {
public:
    IntegrationError(const std::string& what, double time)
        : NumericError(what), time_(time) {}
    double time() const noexcept { return time_; }

private:
    double time_;
};

/// Derivative extrapolation did not converge.
class InstabilityError : public NumericError {
public:
    using NumericError::NumericError;
};

} // namespace nonmark
