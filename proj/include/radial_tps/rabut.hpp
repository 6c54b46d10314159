#pragma once

// Reproducing-kernel interpolant minimizing the radial energy over a finite
// interval [R1, R2], and its limit R1 -> 0, R2 -> inf, which coincides with
// the non-singular spline fit_type_b.

#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"
#include "linalg.hpp"
#include "spline.hpp"

namespace radial_tps {

/// Truncated kernel: 0 for r <= t, else (t^2 - r^2 + (r^2 + t^2) ln(r/t)) / 4.
inline double kernel_K(double r, double t) {
    if (!(r > 0.0) || !(t > 0.0)) throw DomainError("kernel_K: arguments must be positive");
    if (r <= t) return 0.0;
    return 0.25 * (t * t - r * r + (r * r + t * t) * std::log(r / t));
}

/// Kernel on [R1, R2] anchored at the first knot r1 (so H(r1, .) = 0).
inline double kernel_H(double R1, double R2, double r, double t, double r1) {
    if (!(R1 > 0.0) || !(R2 > R1)) throw ArgumentError("kernel_H: need 0 < R1 < R2");
    if (!(R1 < r1)) throw ArgumentError("kernel_H: need R1 < r1");
    if (r < R1 || r > R2 || t < R1 || t > R2) throw DomainError("kernel_H: arguments outside [R1, R2]");
    const double left = r * r - r1 * r1 + 2.0 * R1 * R1 * std::log(r / r1);
    const double right = t * t - r1 * r1 + 2.0 * R2 * R2 * std::log(t / r1);
    return kernel_K(r, t) - kernel_K(r, r1) - kernel_K(r1, t) + left * right / (8.0 * (R2 * R2 - R1 * R1));
}

/// Pointwise limit of kernel_H as R1 -> 0 and R2 -> inf.
inline double kernel_H_limit(double r, double t, double r1) {
    if (!(r1 > 0.0)) throw DomainError("kernel_H_limit: r1 must be positive");
    return kernel_K(r, t) - kernel_K(r, r1) - kernel_K(r1, t) + 0.25 * (r * r - r1 * r1) * std::log(t / r1);
}

/// Either a finite interval 0 < lower < upper < inf or the full-axis limit.
struct KernelBounds {
    double lower = 0.0;
    double upper = std::numeric_limits<double>::infinity();

    static KernelBounds limit() { return {}; }
    static KernelBounds finite(double R1, double R2) { return {R1, R2}; }

    bool is_limit() const { return lower == 0.0 && std::isinf(upper); }
};

struct KernelInterpolant {
    KnotSet knots;
    std::vector<double> lambda;  // lambda_2 .. lambda_n
    double nu1 = 0.0;
    KernelBounds bounds;

    double kernel(double r, double t) const {
        return bounds.is_limit() ? kernel_H_limit(r, t, knots.front())
                                 : kernel_H(bounds.lower, bounds.upper, r, t, knots.front());
    }
};

inline KernelInterpolant fit_rabut(const KnotSet& knots, std::span<const double> values,
                                   KernelBounds bounds = KernelBounds::limit()) {
    const std::size_t n = knots.size();
    if (n < 2) throw ArgumentError("fit_rabut: at least two knots are required");
    if (values.size() != n) throw ArgumentError("fit_rabut: knot/value count mismatch");
    if (!bounds.is_limit()) {
        if (!(bounds.lower > 0.0) || !std::isfinite(bounds.upper))
            throw ArgumentError("fit_rabut: bounds must be both finite or both the limit");
        if (!(bounds.lower < knots.front()) || !(knots.back() < bounds.upper))
            throw ArgumentError("fit_rabut: need R1 < r_1 and r_n < R2");
    }
    KernelInterpolant ki{knots, {}, values[0], bounds};
    Matrix m(n - 1, n - 1);
    std::vector<double> rhs(n - 1);
    for (std::size_t k = 1; k < n; ++k) {
        for (std::size_t j = 1; j < n; ++j) m(k - 1, j - 1) = ki.kernel(knots[k], knots[j]);
        rhs[k - 1] = values[k] - values[0];
    }
    ki.lambda = solve_guarded(m, rhs);
    return ki;
}

/// nu_1 + sum_j lambda_j H(r, r_j). Finite interpolants live on [R1, R2] only.
inline double evaluate_rabut(const KernelInterpolant& ki, double r) {
    if (!(r > 0.0)) throw DomainError("evaluate_rabut: radius must be positive");
    if (!ki.bounds.is_limit() && (r < ki.bounds.lower || r > ki.bounds.upper))
        throw DomainError("evaluate_rabut: r = " + std::to_string(r) + " outside [R1, R2]");
    double acc = ki.nu1;
    for (std::size_t j = 1; j < ki.knots.size(); ++j) acc += ki.lambda[j - 1] * ki.kernel(r, ki.knots[j]);
    return acc;
}

}  // namespace radial_tps
