#pragma once

#include <stdexcept>
#include <string>

namespace lindet {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Shapes of the operands do not agree.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Argument outside the operation's domain (negative variance, cond < 1, NaN entries, ...).
class InvalidArgumentError : public Error {
public:
    using Error::Error;
};

/// Matrix is numerically singular: sigma_min <= 1e-12 * sigma_max.
class SingularMatrixError : public Error {
public:
    SingularMatrixError(const std::string& what, double sigma_ratio)
        : Error(what), sigma_ratio_(sigma_ratio) {}

    /// sigma_min / sigma_max of the offending matrix.
    double sigma_ratio() const noexcept { return sigma_ratio_; }

private:
    double sigma_ratio_;
};

/// Input carries no information to work with (e.g. an all-zero channel).
class DegenerateInputError : public Error {
public:
    using Error::Error;
};

/// Rejection sampler ran out of attempts.
class SamplingExhaustedError : public Error {
public:
    using Error::Error;
};

/// Bit stream cannot be split into QPSK symbols.
class FramingError : public Error {
public:
    using Error::Error;
};

/// A closed-form expression evaluated outside the region where it is meaningful.
class FormulaDomainError : public Error {
public:
    using Error::Error;
};

} // namespace lindet
