#pragma once

#include <stdexcept>
#include <string>

namespace critsqueeze {

/// Argument outside the domain where a formula or model is defined.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Base for failures of a numerical procedure on valid input.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Adaptive integrator could not make progress. Carries the time reached.
class IntegrationError : public NumericalError {
public:
    IntegrationError(const std::string& what, double time)
        : NumericalError(what), time_(time) {}
    double time() const noexcept { return time_; }

private:
    double time_;
};

/// A truncation cutoff would have to exceed its hard cap.
class CapacityError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Requested quantity cannot be computed to the needed accuracy from the
/// available (truncated) data.
class PrecisionError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Two independent evaluation routes disagree beyond tolerance.
class ConsistencyError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Result exists but its truncation leakage exceeds the declared threshold.
class UnreliableResultError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace critsqueeze
