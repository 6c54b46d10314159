#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "radial_tps/compact.hpp"
#include "radial_tps/energy.hpp"
#include "test_support.hpp"

using namespace radial_tps;
using testing_support::random_knots;
using testing_support::random_values;
using testing_support::random_pair;

TEST(SplineEnergy, ClosedFormSpotValues) {
    const KnotSet one({1.0});
    EXPECT_EQ(spline_energy(PiecewiseForm{one, {{0, 0, 3, 0}, {0, 0, 3, 0}}}), 0.0);
    EXPECT_NEAR(spline_energy(PiecewiseForm{one, {{0, 0, 0, 0}, {0, 0, 0, 1}}}), 1.0, 1e-15);
    EXPECT_NEAR(spline_energy(PiecewiseForm{one, {{1, 0, 0, 0}, {0, 0, 1, 0}}}), 4.0, 1e-12);
    // Tail D^2 / r_n^2 with r_n = 2.
    EXPECT_NEAR(spline_energy(PiecewiseForm{KnotSet({2.0}), {{0, 0, 0, 0}, {0, 0, 0, 3}}}), 9.0 / 4.0, 1e-15);
}

TEST(SplineEnergy, FrozenReferenceValues) {
    // Reference values from 30-digit quadrature of the closed-form profiles.
    const auto b = fit_type_b(KnotSet({1.0, 2.0}), std::vector<double>{1.0, 0.0});
    EXPECT_NEAR(spline_energy(b), 2.47876682315862000, 1e-11);
    EXPECT_NEAR(spline_energy(b), 4.0 / (3.0 - 2.0 * std::numbers::ln2), 1e-11);
    EXPECT_NEAR(spline_energy(eta2_model()), 2.86881002467575001, 1e-11);
}

TEST(SplineEnergy, RejectsNonFinite) {
    EXPECT_THROW(spline_energy(PiecewiseForm{KnotSet({1.0}), {{NAN, 0, 0, 0}, {0, 0, 0, 0}}}), DomainError);
}

TEST(SplineEnergy, HomogeneousOfDegreeTwo) {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 10; ++i) {
        const auto knots = random_knots(rng, 5, 0.3, 6.0);
        const auto values = random_values(rng, 5);
        const double t = 0.1 + 3.0 * std::uniform_real_distribution<double>(0, 1)(rng);
        std::vector<double> scaled_values = values;
        for (auto& v : scaled_values) v *= t;
        const auto s = fit_type_b(knots, values);
        const auto ts = DilateModel(knots, t * s.c(), [&] {
            std::vector<double> a(s.a().begin(), s.a().end());
            for (auto& x : a) x *= t;
            return a;
        }(), ModelKind::TypeB);
        const double e = spline_energy(s);
        EXPECT_GE(e, 0.0);
        EXPECT_NEAR(spline_energy(ts), t * t * e, 1e-12 * t * t * e);
    }
}

TEST(ProfileEnergy, Examples) {
    const DataProfile one{"one", [](double) { return 1.0; }, [](double) { return 0.0; }, [](double) { return 0.0; }, 1.0};
    EXPECT_EQ(profile_energy(one, 0.5, 3.0), 0.0);
    const DataProfile log{"log", [](double r) { return std::log(r); }, [](double r) { return 1.0 / r; },
                          [](double r) { return -1.0 / (r * r); }, 0.0};
    EXPECT_NEAR(profile_energy(log, 1.0, std::numbers::e), 1.0 - std::exp(-2.0), 1e-12);
    const DataProfile sq{"sq", [](double r) { return r * r; }, [](double r) { return 2 * r; }, [](double) { return 2.0; }, 0.0};
    EXPECT_NEAR(profile_energy(sq, 0.0, 1.0), 4.0, 1e-12);
    EXPECT_THROW(profile_energy(sq, 1.0, 0.5), ArgumentError);
}

TEST(ProfileEnergy, NonConvergenceIsReported) {
    // |f'|^2 / r ~ 1/r near 0 is not integrable.
    const DataProfile bad{"bad", [](double r) { return r; }, [](double) { return 1.0; }, [](double) { return 0.0; }, 0.0};
    EXPECT_THROW(profile_energy(bad, 0.0, 1.0), NumericalFailure);
}

TEST(SemiInner, Examples) {
    const auto constant = to_piecewise(DilateModel(KnotSet({1.0, 2.0}), 2.0, {0.0, 0.0}, ModelKind::TypeB));
    EXPECT_EQ(semi_inner(constant, {1.5, 0.2, 1.0}), 0.0);

    const auto b = fit_type_b(KnotSet({1.0, 2.0, 5.0}), std::vector<double>{1.0, 0.0, 0.5});
    EXPECT_NEAR(semi_inner(b.piecewise(), {3.0, 0.9, 2.0}), 0.0, 1e-11);

    // A type A spline with a nonzero singular coefficient: bumps touching r = 0
    // are rejected, bumps inside (0, r_1) away from 0 are orthogonal.
    const auto a = fit_type_a(KnotSet({1.0, 2.0}), std::vector<double>{1.0, 0.0}, -1.0);
    ASSERT_GT(std::abs(singular_coefficient(a)), 0.1);
    EXPECT_THROW(semi_inner(a.piecewise(), {0.2, 0.3, 1.0}), ArgumentError);
    EXPECT_NEAR(semi_inner(a.piecewise(), {0.5, 0.3, 1.0}), 0.0, 1e-11);
}

TEST(SemiInner, RejectsStraddlingBumps) {
    const auto b = fit_type_b(KnotSet({1.0, 2.0}), std::vector<double>{1.0, 0.0});
    EXPECT_THROW(semi_inner(b.piecewise(), {1.95, 0.1, 1.0}), ArgumentError);
    EXPECT_THROW(semi_inner(b.piecewise(), {1.0, 0.2, 1.0}), ArgumentError);
    EXPECT_THROW(semi_inner(b.piecewise(), {1.5, 0.0, 1.0}), ArgumentError);
    EXPECT_NO_THROW(semi_inner(b.piecewise(), {3.0, 0.5, 1.0}));
}

TEST(Variational, OrthogonalToPerturbationsAcrossKnots) {
    // psi = (r - r_j) * bump centred on the knot r_j: vanishes at every knot
    // and at 0 but spans two knot intervals, so orthogonality relies on the
    // C^2 matching and the boundary segments, not on one segment alone.
    std::mt19937_64 rng(31);
    for (int i = 0; i < 40; ++i) {
        const std::size_t n = 2 + static_cast<std::size_t>(i % 6);
        const auto knots = random_knots(rng, n, 0.5, 8.0);
        const auto values = random_values(rng, n, 3.0);
        const auto s = i % 2 ? fit_type_a(knots, values, 1.5) : fit_type_b(knots, values);
        const std::size_t j = static_cast<std::size_t>(i) % n;
        double gap = knots[j];
        if (j > 0) gap = std::min(gap, knots[j] - knots[j - 1]);
        if (j + 1 < n) gap = std::min(gap, knots[j + 1] - knots[j]);
        const BumpPerturbation b{knots[j], 0.8 * gap, 1.0};
        const double rj = knots[j];
        auto integrand = [&](double r) {
            const double p1 = b.eval(r, 0) + (r - rj) * b.eval(r, 1);
            const double p2 = 2.0 * b.eval(r, 1) + (r - rj) * b.eval(r, 2);
            return r * s.derivative(r, 2) * p2 + s.derivative(r, 1) * p1 / r;
        };
        const double ip = integrate_adaptive<64>(integrand, b.lower(), rj, 1e-13) +
                          integrate_adaptive<64>(integrand, rj, b.upper(), 1e-13);
        const double scale = integrate_adaptive<64>([&](double r) { return std::abs(integrand(r)); }, b.lower(), b.upper(), 1e-6);
        EXPECT_LE(std::abs(ip), 1e-9 * (1 + scale)) << "case " << i;
    }
}

TEST(Variational, OrthogonalityOverRandomPairs) {
    std::mt19937_64 rng(77);
    for (int i = 0; i < 100; ++i) {
        const auto [s, psi] = random_pair(rng, i);
        const double norm_s = std::sqrt(spline_energy(s));
        const double norm_psi = std::sqrt(profile_energy(as_profile(psi), psi.lower(), psi.upper()));
        const double ip = semi_inner(s.piecewise(), psi);
        EXPECT_LE(std::abs(ip), 1e-9 * (1 + norm_s) * (1 + norm_psi)) << "pair " << i;
    }
}

TEST(Variational, FirstIntegralRelationAndMinimality) {
    std::mt19937_64 rng(78);
    for (int i = 0; i < 30; ++i) {
        const auto [s, psi] = random_pair(rng, i);
        const auto& knots = s.knots();
        std::vector<double> breaks{0.0};
        for (double k : knots.radii()) breaks.push_back(k);
        breaks.push_back(psi.lower());
        breaks.push_back(psi.upper());
        std::sort(breaks.begin(), breaks.end());
        const double end = breaks.back();

        const auto f = as_profile(s) + as_profile(psi);
        const double tail = s.piecewise().segments.back().D;
        const double energy_f = profile_energy(f, breaks) + tail * tail / (end * end);
        const double energy_s = spline_energy(s);
        const double energy_psi = profile_energy(as_profile(psi), psi.lower(), psi.upper());
        EXPECT_NEAR(energy_f, energy_s + energy_psi, 1e-8 * energy_f) << "pair " << i;
        EXPECT_GT(energy_f, energy_s);
    }
}
