#pragma once

// Radial Beppo Levi energy  int (r |f''|^2 + |f'|^2 / r) dr  and the
// associated semi-inner product.

#include <cmath>
#include <span>
#include <string>

#include "basis.hpp"
#include "errors.hpp"
#include "profile.hpp"
#include "quadrature.hpp"
#include "spline.hpp"

namespace radial_tps {

/// psi(r) = amplitude (1 - x^2)^3 with x = (r - center) / halfwidth on the
/// support, zero elsewhere. C^2 everywhere.
struct BumpPerturbation {
    double center = 1.0;
    double halfwidth = 0.1;
    double amplitude = 1.0;

    double lower() const { return center - halfwidth; }
    double upper() const { return center + halfwidth; }

    double eval(double r, int order = 0) const {
        const double x = (r - center) / halfwidth;
        if (std::abs(x) >= 1.0) return 0.0;
        const double q = 1.0 - x * x;
        switch (order) {
            case 0: return amplitude * q * q * q;
            case 1: return -6.0 * amplitude * x * q * q / halfwidth;
            case 2: return -6.0 * amplitude * q * (1.0 - 5.0 * x * x) / (halfwidth * halfwidth);
            default: throw ArgumentError("BumpPerturbation: order must be in 0..2");
        }
    }
};

inline DataProfile as_profile(const BumpPerturbation& psi) {
    return DataProfile{"bump",
                       [psi](double r) { return psi.eval(r, 0); },
                       [psi](double r) { return psi.eval(r, 1); },
                       [psi](double r) { return psi.eval(r, 2); },
                       0.0};
}

namespace detail {

inline double segment_energy_density(const SegmentCoeffs& s, double r) {
    const double d1 = segment_eval(s, r, 1), d2 = segment_eval(s, r, 2);
    return r * d2 * d2 + d1 * d1 / r;
}

}  // namespace detail

/// Energy of a spline in piecewise form. Finite segments by adaptive
/// 64-point Gauss-Legendre, (0, r_1) after the substitution r = r_1 u^2,
/// and the logarithmic tail in closed form D^2 / r_n^2.
inline double spline_energy(const PiecewiseForm& pf) {
    for (const auto& s : pf.segments)
        if (!s.finite()) throw DomainError("spline_energy: non-finite segment coefficients");
    constexpr double tol = 1e-12;
    const auto& knots = pf.knots;
    const std::size_t n = knots.size();

    const double r1 = knots.front();
    const auto& head = pf.segments.front();
    double total = integrate_adaptive<64>(
        [&](double u) {
            const double r = r1 * u * u;
            return detail::segment_energy_density(head, r) * 2.0 * r1 * u;
        },
        0.0, 1.0, tol);

    for (std::size_t j = 1; j < n; ++j) {
        const auto& seg = pf.segments[j];
        total += integrate_adaptive<64>([&](double r) { return detail::segment_energy_density(seg, r); }, knots[j - 1],
                                        knots[j], tol);
    }
    const double d = pf.segments.back().D, rn = knots.back();
    return total + d * d / (rn * rn);
}

inline double spline_energy(const DilateModel& model) { return spline_energy(model.piecewise()); }

/// <eta, psi>_0 for a bump supported strictly inside one knot interval (away
/// from r = 0, so psi vanishes at every knot and at the origin).
inline double semi_inner(const PiecewiseForm& pf, const BumpPerturbation& psi) {
    if (!(psi.halfwidth > 0.0)) throw ArgumentError("semi_inner: bump halfwidth must be positive");
    if (!(psi.lower() > 0.0)) throw ArgumentError("semi_inner: bump support must stay away from r = 0");
    const std::size_t seg = pf.segment_index(psi.lower());
    if (pf.segment_index(psi.upper()) != seg || (seg > 0 && psi.lower() <= pf.knots[seg - 1]))
        throw ArgumentError("semi_inner: bump support [" + std::to_string(psi.lower()) + ", " +
                            std::to_string(psi.upper()) + "] straddles a knot");
    const auto& s = pf.segments[seg];
    return integrate_adaptive<64>(
        [&](double r) {
            return r * segment_eval(s, r, 2) * psi.eval(r, 2) + segment_eval(s, r, 1) * psi.eval(r, 1) / r;
        },
        psi.lower(), psi.upper(), 1e-12);
}

/// Energy integral of a general profile restricted to [a, b], a >= 0.
inline double profile_energy(const DataProfile& f, double a, double b, double rel_tol = 1e-9) {
    if (!(a >= 0.0) || !(b >= a)) throw ArgumentError("profile_energy: need 0 <= a <= b");
    const double value = integrate_adaptive<64>(
        [&](double r) {
            const double d1 = f.d1(r), d2 = f.d2(r);
            return r * d2 * d2 + d1 * d1 / r;
        },
        a, b, rel_tol, 20);
    if (!std::isfinite(value)) throw NumericalFailure("profile_energy: integrand is not finite on the interval");
    return value;
}

/// Sum of profile_energy over consecutive breakpoints (e.g. the knots, where
/// a spline's third derivative jumps).
inline double profile_energy(const DataProfile& f, std::span<const double> breakpoints, double rel_tol = 1e-9) {
    double total = 0.0;
    for (std::size_t i = 1; i < breakpoints.size(); ++i)
        total += profile_energy(f, breakpoints[i - 1], breakpoints[i], rel_tol);
    return total;
}

}  // namespace radial_tps
