#pragma once

#include <stdexcept>
#include <string>

namespace lcs {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of the operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Invalid combination of arguments (dimension mismatch, inadequate grid, ...).
class UsageError : public Error {
public:
    using Error::Error;
};

/// A series or quadrature failed to produce a usable value.
/// Carries the best estimate reached before giving up.
class EvaluationError : public Error {
public:
    EvaluationError(const std::string& what, double partial)
        : Error(what), partial_(partial) {}

    double partial_estimate() const noexcept { return partial_; }

private:
    double partial_;
};

} // namespace lcs
