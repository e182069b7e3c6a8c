#pragma once

#include <stdexcept>
#include <string>

namespace klslab {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Non-finite or otherwise malformed input.
class InvalidInputError : public Error {
public:
    using Error::Error;
};

/// Evaluation of a gauge derivative at a point where it does not exist
/// (cube edge, simplex ridge, l_p axis outside the admissible margin).
class NonSmoothPointError : public Error {
public:
    using Error::Error;
};

/// Operation not available for this body/measure (e.g. curvature of a cube,
/// closed-form volume of a generic body in high dimension).
class UnsupportedError : public Error {
public:
    using Error::Error;
};

/// A documented precondition was violated (barycenter not at origin,
/// function not vanishing on the boundary, ...).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Too few samples for the requested statistic.
class InsufficientSamplesError : public Error {
public:
    using Error::Error;
};

/// Two independent evaluation routes disagreed beyond tolerance.
/// Indicates a bug, not a property of the input; aborts the run.
class InternalConsistencyError : public Error {
public:
    using Error::Error;
};

/// Rejection sampling acceptance rate collapsed; caller should switch method.
class MethodSwitchError : public Error {
public:
    using Error::Error;
};

} // namespace klslab
