#pragma once

// Gauss-Legendre rules and the composite/adaptive integrators built on them.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <utility>
#include <vector>
#include <string>

#include "errors.hpp"

namespace radial_tps {

template <std::size_t N>
struct GaussLegendreRule {
    std::array<double, N> nodes{};    // on [-1, 1]
    std::array<double, N> weights{};
};

namespace detail {

template <std::size_t N>
GaussLegendreRule<N> make_gauss_legendre() {
    GaussLegendreRule<N> rule;
    const std::size_t half = (N + 1) / 2;
    for (std::size_t i = 0; i < half; ++i) {
        // Newton iteration on P_N from the Chebyshev-like initial guess.
        double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(N) + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (std::size_t k = 2; k <= N; ++k) {
                const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
                p0 = p1;
                p1 = pk;
            }
            dp = static_cast<double>(N) * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        double p0 = 1.0, p1 = x;
        for (std::size_t k = 2; k <= N; ++k) {
            const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
            p0 = p1;
            p1 = pk;
        }
        dp = static_cast<double>(N) * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[N - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[N - 1 - i] = w;
    }
    if (N % 2 == 1) rule.nodes[N / 2] = 0.0;
    return rule;
}

}  // namespace detail

template <std::size_t N>
const GaussLegendreRule<N>& gauss_legendre() {
    static const GaussLegendreRule<N> rule = detail::make_gauss_legendre<N>();
    return rule;
}

/// N-point Gauss-Legendre approximation of the integral of f over [a, b].
template <std::size_t N, class F>
double integrate_gl(F&& f, double a, double b) {
    const auto& rule = gauss_legendre<N>();
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double acc = 0.0;
    for (std::size_t i = 0; i < N; ++i) acc += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return acc * half;
}

/// Sum of N-point rules over `panels` equal subintervals of [a, b].
template <std::size_t N, class F>
double integrate_composite(F&& f, double a, double b, std::size_t panels) {
    const double h = (b - a) / static_cast<double>(panels);
    double acc = 0.0;
    for (std::size_t p = 0; p < panels; ++p) {
        const double lo = a + h * static_cast<double>(p);
        const double hi = p + 1 == panels ? b : lo + h;
        acc += integrate_gl<N>(f, lo, hi);
    }
    return acc;
}

namespace detail {

struct AdaptivePanel {
    double a, b, value, error;
    int depth;
    bool operator<(const AdaptivePanel& other) const { return error < other.error; }
};

template <std::size_t N, class F>
AdaptivePanel make_panel(F& f, double a, double b, double whole, int depth) {
    const double mid = 0.5 * (a + b);
    const double halves = integrate_gl<N>(f, a, mid) + integrate_gl<N>(f, mid, b);
    return {a, b, halves, std::abs(halves - whole), depth};
}

}  // namespace detail

/// Globally adaptive N-point Gauss-Legendre quadrature. Each panel's error is
/// the difference between its one-panel and two-half estimates; the panel
/// with the largest error is bisected until the summed error is at most
/// `rel_tol` times an estimate of the integral of |f| over [a, b]. Throws
/// NumericalFailure when a panel would need more than `max_depth` bisections.
template <std::size_t N = 64, class F>
double integrate_adaptive(F&& f, double a, double b, double rel_tol, int max_depth = 20) {
    if (a == b) return 0.0;
    const double scale = std::max(std::abs(integrate_gl<N>(f, a, b)),
                                  integrate_gl<N>([&](double x) { return std::abs(f(x)); }, a, b));
    const double abs_tol = std::max(rel_tol * scale, 1e-300);

    std::vector<detail::AdaptivePanel> heap{detail::make_panel<N>(f, a, b, integrate_gl<N>(f, a, b), 0)};
    auto total_error = [&] {
        // Recomputed rather than updated so rounding does not accumulate.
        double e = 0.0;
        for (const auto& p : heap) e += p.error;
        return e;
    };
    while (total_error() > abs_tol) {
        std::pop_heap(heap.begin(), heap.end());
        const auto worst = heap.back();
        heap.pop_back();
        if (worst.depth >= max_depth || !std::isfinite(worst.error))
            throw NumericalFailure("adaptive quadrature did not converge after " + std::to_string(max_depth) +
                                   " bisection levels on [" + std::to_string(worst.a) + ", " +
                                   std::to_string(worst.b) + "]");
        const double mid = 0.5 * (worst.a + worst.b);
        for (auto [lo, hi] : {std::pair{worst.a, mid}, std::pair{mid, worst.b}}) {
            heap.push_back(detail::make_panel<N>(f, lo, hi, integrate_gl<N>(f, lo, hi), worst.depth + 1));
            std::push_heap(heap.begin(), heap.end());
        }
    }
    double total = 0.0;
    for (const auto& p : heap) total += p.value;
    return total;
}

}  // namespace radial_tps
