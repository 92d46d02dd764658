#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace projpair {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input that never reached the numerical layer: bad file contents,
/// inconsistent dimensions, out-of-range arguments.
class UsageError : public Error {
public:
    explicit UsageError(const std::string& what) : Error(what) {}
};

/// A matrix failed a structural check (not Hermitian, not a projection,
/// not unitary, not positive semidefinite).
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& what) : Error(what) {}
};

/// A user-supplied free parameter does not satisfy its contract
/// (e.g. a non-unitary block, or a block that fails to commute with Q0).
class ParameterError : public ValidationError {
public:
    explicit ParameterError(const std::string& what) : ValidationError(what) {}
};

/// The requested object does not exist for this projection pair.
/// Carries the dimensions whose mismatch blocks existence.
class ExistenceError : public Error {
public:
    ExistenceError(const std::string& what, Eigen::Index d2, Eigen::Index d3)
        : Error(what), d2(d2), d3(d3) {}

    Eigen::Index d2;
    Eigen::Index d3;
};

/// The operation is defined on a smaller class of inputs than was given
/// (e.g. an extremal-norm query on a pair that is not in generic position,
/// or a generic-part query when the generic part is empty).
class ScopeError : public Error {
public:
    explicit ScopeError(const std::string& what) : Error(what) {}
};

/// A numerical contract was breached: an eigensolver failed to converge or a
/// constructed object missed its residual budget. Carries the offending residual.
class NumericalError : public Error {
public:
    NumericalError(const std::string& what, double residual)
        : Error(what), residual(residual) {}

    double residual;
};

} // namespace projpair
