#pragma once

#include <stdexcept>
#include <string>

namespace radial_tps {

/// Argument outside the mathematical domain of an operation (negative radius,
/// non-finite coefficient, point outside a kernel's interval).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Malformed request: wrong derivative order, invalid bounds, bad knot set.
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A linear system was singular or too ill-conditioned to trust, or an
/// adaptive procedure failed to converge.
class NumericalFailure : public std::runtime_error {
public:
    explicit NumericalFailure(const std::string& what, double condition_estimate = 0.0)
        : std::runtime_error(what), condition_estimate_(condition_estimate) {}

    /// 1-norm condition estimate of the offending system, 0 when not applicable.
    double condition_estimate() const noexcept { return condition_estimate_; }

private:
    double condition_estimate_;
};

}  // namespace radial_tps
