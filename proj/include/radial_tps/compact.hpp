#pragma once

// Two compactly supported members of the spline class: eta2 on knots {1,2}
// (singular coefficient 1, support [0,2]) and beta on knots {1,2,3}
// (non-singular, support [0,3]). Plus the order-zero Hankel transform used
// to check positive definiteness of their bivariate radial extensions.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "basis.hpp"
#include "errors.hpp"
#include "linalg.hpp"
#include "quadrature.hpp"
#include "spline.hpp"

namespace radial_tps {

inline DilateModel eta2_model() {
    const double c = 4.0 / 3.0 * std::numbers::ln2;
    return DilateModel(KnotSet({1.0, 2.0}), c, {-4.0 / 3.0, 4.0 / 3.0}, ModelKind::TypeA, c);
}

inline DilateModel beta_model() {
    const double c = (27.0 * std::log(3.0) - 32.0 * std::numbers::ln2) / 5.0;
    return DilateModel(KnotSet({1.0, 2.0, 3.0}), c, {1.0, -32.0 / 5.0, 27.0 / 5.0}, ModelKind::TypeB);
}

/// eta2(r) = (4/3) [ln 2 - phi0(r) + phi0(r/2)].
inline double eta2(double r) {
    return 4.0 / 3.0 * (std::numbers::ln2 - phi0(r) + phi0(0.5 * r));
}

/// beta(r) = (1/5) [27 ln 3 - 32 ln 2 + 5 phi0(r) - 32 phi0(r/2) + 27 phi0(r/3)].
inline double beta_profile(double r) {
    return (27.0 * std::log(3.0) - 32.0 * std::numbers::ln2 + 5.0 * phi0(r) - 32.0 * phi0(0.5 * r) +
            27.0 * phi0(r / 3.0)) /
           5.0;
}

enum class CompactName { Eta2, Beta };

struct CompactProfile {
    CompactName name;
    DilateModel model;
    double support_radius;

    static CompactProfile eta2() { return {CompactName::Eta2, eta2_model(), 2.0}; }
    static CompactProfile beta() { return {CompactName::Beta, beta_model(), 3.0}; }

    double operator()(double r) const {
        if (r >= support_radius) return 0.0;
        return name == CompactName::Eta2 ? radial_tps::eta2(r) : beta_profile(r);
    }
};

inline std::string to_string(CompactName name) { return name == CompactName::Eta2 ? "eta2" : "beta"; }

/// Bessel function of the first kind, order zero. Power series below 12,
/// Hankel's asymptotic expansion (stopped at its smallest term) above.
inline double bessel_j0(double x) {
    if (!std::isfinite(x)) throw DomainError("bessel_j0: argument must be finite");
    x = std::abs(x);
    if (x < 12.0) {
        const double q = 0.25 * x * x;
        double term = 1.0, sum = 1.0;
        for (int k = 1; k < 200; ++k) {
            term *= -q / (static_cast<double>(k) * static_cast<double>(k));
            sum += term;
            if (std::abs(term) < 1e-17 * std::max(1.0, std::abs(sum))) break;
        }
        return sum;
    }
    double p = 1.0, q = 0.0, term = 1.0;
    for (int k = 1; k < 100; ++k) {
        const double odd = 2.0 * k - 1.0;
        const double next = term * odd * odd / (static_cast<double>(k) * 8.0 * x);
        if (next >= term) break;
        term = next;
        // Sign pattern of the series: P gets (-1)^(k/2) for even k, Q gets -(-1)^((k-1)/2) for odd k.
        if (k % 2 == 0)
            p += ((k / 2) % 2 == 0 ? 1.0 : -1.0) * term;
        else
            q += (((k - 1) / 2) % 2 == 0 ? -1.0 : 1.0) * term;
        if (term < 1e-17) break;
    }
    const double chi = x - 0.25 * std::numbers::pi;
    return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

/// F(t) = int_0^R eta(r) J0(t r) r dr over the support [0, R]. Gauss-Legendre
/// panels of length <= min(0.25, pi / max(t, 1)) aligned with the knots; the
/// panel count is doubled until two estimates agree to 1e-8 relative.
inline double fourier_profile(const CompactProfile& p, double t) {
    if (!(t >= 0.0)) throw DomainError("fourier_profile: t must be nonnegative");
    std::vector<double> breaks{0.0};
    for (double k : p.model.knots().radii())
        if (k < p.support_radius) breaks.push_back(k);
    breaks.push_back(p.support_radius);

    const double max_panel = std::min(0.25, std::numbers::pi / std::max(t, 1.0));
    auto integrand = [&](double r) { return p(r) * bessel_j0(t * r) * r; };
    auto estimate = [&](std::size_t refine) {
        double acc = 0.0;
        for (std::size_t i = 1; i < breaks.size(); ++i) {
            const double len = breaks[i] - breaks[i - 1];
            const auto panels = static_cast<std::size_t>(std::ceil(len / max_panel)) * refine;
            acc += integrate_composite<32>(integrand, breaks[i - 1], breaks[i], panels);
        }
        return acc;
    };
    // Magnitude scale for values near a zero of F.
    const double scale = integrate_composite<32>([&](double r) { return std::abs(p(r)) * r; }, 0.0,
                                                 p.support_radius, 16);
    double coarse = estimate(1);
    for (std::size_t refine = 2; refine <= 64; refine *= 2) {
        const double fine = estimate(refine);
        if (std::abs(fine - coarse) <= 1e-8 * std::abs(fine) + 1e-15 * scale) return fine;
        coarse = fine;
    }
    throw NumericalFailure("fourier_profile: panel refinement did not converge at t = " + std::to_string(t));
}

struct FourierScan {
    std::vector<double> t;
    std::vector<double> values;
    bool all_positive = true;
    /// First bracket [t_i, t_{i+1}] with opposite signs, and the root inside it.
    std::optional<std::pair<double, double>> first_bracket;
    std::optional<double> first_root;
};

/// Samples F on `count` equispaced points of [t0, t1]; on the first sign change,
/// bisects to locate the root within `root_tol`.
inline FourierScan scan_fourier(const CompactProfile& p, double t0, double t1, std::size_t count,
                                double root_tol = 1e-6) {
    if (count < 2 || !(t1 > t0)) throw ArgumentError("scan_fourier: need t0 < t1 and count >= 2");
    FourierScan scan;
    scan.t.resize(count);
    scan.values.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        scan.t[i] = t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(count - 1);
        scan.values[i] = fourier_profile(p, scan.t[i]);
        if (!(scan.values[i] > 0.0)) scan.all_positive = false;
    }
    for (std::size_t i = 0; i + 1 < count; ++i) {
        if ((scan.values[i] > 0.0) != (scan.values[i + 1] > 0.0)) {
            double lo = scan.t[i], hi = scan.t[i + 1];
            const bool lo_positive = scan.values[i] > 0.0;
            scan.first_bracket = {lo, hi};
            while (hi - lo > root_tol) {
                const double mid = 0.5 * (lo + hi);
                ((fourier_profile(p, mid) > 0.0) == lo_positive ? lo : hi) = mid;
            }
            scan.first_root = 0.5 * (lo + hi);
            break;
        }
    }
    return scan;
}

/// Dimension of the space of elements of the spline class on knots {1..k}
/// vanishing identically on [k, inf), optionally restricted to non-singular
/// ones. Unknowns (c, a_1..a_k); the tail segment C + D ln r must be zero.
inline std::size_t compact_support_null_dimension(std::size_t k, bool nonsingular) {
    if (k == 0) throw ArgumentError("compact_support_null_dimension: k must be positive");
    Matrix m(nonsingular ? 3 : 2, k + 1);
    m(0, 0) = 1.0;
    for (std::size_t j = 1; j <= k; ++j) {
        const double rj = static_cast<double>(j);
        m(0, j) = 1.0 - std::log(rj);
        m(1, j) = 1.0;
        if (nonsingular) m(2, j) = 1.0 / (rj * rj);
    }
    return k + 1 - matrix_rank(m);
}

}  // namespace radial_tps
