#pragma once

#include <stdexcept>
#include <string>

namespace svir {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of a function (negative I, φ(x≤0), ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Invalid parameters or configuration. The CLI maps this to exit code 2.
class ConfigError : public Error {
public:
    using Error::Error;
};

class SizeMismatch : public Error {
public:
    using Error::Error;
};

/// Base for failures of the numerics (exit code 3 in the CLI).
class NumericalError : public Error {
public:
    using Error::Error;
};

class DegenerateKernel : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// A history query fell outside the stored time window.
class HistoryUnderflow : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class NoEndemicEquilibrium : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class SearchFailure : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Non-finite values appeared during time stepping.
class BlowUp : public NumericalError {
public:
    BlowUp(double t, std::string field)
        : NumericalError("non-finite value in field " + field + " at t = " + std::to_string(t)),
          time_(t), field_(std::move(field))
    {
    }

    double time() const noexcept { return time_; }
    const std::string& field() const noexcept { return field_; }

private:
    double time_;
    std::string field_;
};

} // namespace svir
