#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>

namespace rk {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Malformed text input.
class ParseError : public Error {
public:
    using Error::Error;
};

/// A numerical method did not reach its tolerance. Carries the best value seen.
class NumericFailure : public Error {
public:
    NumericFailure(const std::string& what, std::complex<double> best = {}, double error_estimate = 0.0)
        : Error(what), best_(best), error_estimate_(error_estimate) {}

    std::complex<double> best() const noexcept { return best_; }
    double error_estimate() const noexcept { return error_estimate_; }

private:
    std::complex<double> best_;
    double error_estimate_;
};

/// An internal identity (degree zero, parity, total count) failed to hold.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

}  // namespace rk
