#pragma once

#include <stdexcept>
#include <string>

namespace sylvester {

/// A parameter lies outside the region where the requested quantity is defined.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// An intermediate quantity would leave the double-precision range.
class OverflowError : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

/// Adaptive quadrature could not reach the requested tolerance.
/// Carries the best value found and its error estimate.
class NonConvergence : public std::runtime_error {
public:
    NonConvergence(const std::string& what, double best_value, double error_estimate)
        : std::runtime_error(what), best_value_(best_value), error_estimate_(error_estimate) {}

    double best_value() const noexcept { return best_value_; }
    double error_estimate() const noexcept { return error_estimate_; }

private:
    double best_value_;
    double error_estimate_;
};

/// method=closed_form was requested for a key the registry does not hold.
class NotInRegistry : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// A linear system built from sample points is numerically singular.
class Degenerate : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace sylvester
