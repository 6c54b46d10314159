#pragma once

// The radial basis function phi0, the four-term null space of the radial
// thin plate operator L0 = r (d^2/dr^2 + (1/r) d/dr)^2, and the boundary
// operators G0 (left of the first knot) and R0 (right of the last knot).

#include <cmath>
#include <string>

#include "errors.hpp"

namespace radial_tps {

/// phi0(r) = r^2 - r^2 ln r on [0,1] and 1 + ln r beyond. C^2 at r = 1.
inline double phi0(double r) {
    if (!(r >= 0.0)) throw DomainError("phi0: radius must be nonnegative, got " + std::to_string(r));
    if (r == 0.0) return 0.0;
    if (r <= 1.0) return r * r * (1.0 - std::log(r));
    return 1.0 + std::log(r);
}

inline double phi0_derivative(double r, int order) {
    if (order != 1 && order != 2)
        throw ArgumentError("phi0_derivative: order must be 1 or 2, got " + std::to_string(order));
    if (!(r > 0.0)) throw DomainError("phi0_derivative: radius must be positive");
    if (r <= 1.0) {
        const double lr = std::log(r);
        return order == 1 ? r * (1.0 - 2.0 * lr) : -1.0 - 2.0 * lr;
    }
    return order == 1 ? 1.0 / r : -1.0 / (r * r);
}

/// Amplitudes of eta(r) = A r^2 + B r^2 ln r + C + D ln r on one knot interval.
struct SegmentCoeffs {
    double A = 0.0;  ///< r^2
    double B = 0.0;  ///< r^2 ln r
    double C = 0.0;  ///< 1
    double D = 0.0;  ///< ln r

    bool finite() const {
        return std::isfinite(A) && std::isfinite(B) && std::isfinite(C) && std::isfinite(D);
    }

    SegmentCoeffs& operator+=(const SegmentCoeffs& o) {
        A += o.A; B += o.B; C += o.C; D += o.D;
        return *this;
    }
    friend SegmentCoeffs operator*(double t, SegmentCoeffs s) {
        s.A *= t; s.B *= t; s.C *= t; s.D *= t;
        return s;
    }
    friend bool operator==(const SegmentCoeffs&, const SegmentCoeffs&) = default;
};

/// Value (order 0) or derivative (order 1, 2) of the segment function at r > 0.
inline double segment_eval(const SegmentCoeffs& s, double r, int order = 0) {
    if (!(r > 0.0)) throw DomainError("segment_eval: radius must be positive");
    const double lr = std::log(r);
    switch (order) {
        case 0: return s.A * r * r + s.B * r * r * lr + s.C + s.D * lr;
        case 1: return 2.0 * s.A * r + s.B * r * (2.0 * lr + 1.0) + s.D / r;
        case 2: return 2.0 * s.A + s.B * (2.0 * lr + 3.0) - s.D / (r * r);
        case 3: return 2.0 * s.B / r + 2.0 * s.D / (r * r * r);
        default: throw ArgumentError("segment_eval: order must be in 0..3");
    }
}

/// r eta''' + eta'' - eta'/r, the quantity whose jumps across knots appear
/// when integrating the semi-inner product by parts. Constant (= 4B) on each
/// segment.
inline double jump_constant(const SegmentCoeffs& s) { return 4.0 * s.B; }

// Closed forms of the operators applied to a segment; all r > 0.

/// G0 eta = eta''' - eta''/r + eta'/r^2 = 4D / r^3.
inline double apply_g0(const SegmentCoeffs& s, double r) { return 4.0 * s.D / (r * r * r); }

/// R0 eta = (eta'' + eta'/r) / r = 4 (A + B (1 + ln r)) / r.
inline double apply_r0(const SegmentCoeffs& s, double r) {
    return 4.0 * (s.A + s.B * (1.0 + std::log(r))) / r;
}

}  // namespace radial_tps
