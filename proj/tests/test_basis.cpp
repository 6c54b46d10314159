#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "radial_tps/basis.hpp"

using namespace radial_tps;

namespace {
constexpr double e = std::numbers::e;
}

TEST(Phi0, Values) {
    EXPECT_EQ(phi0(0.0), 0.0);
    EXPECT_DOUBLE_EQ(phi0(1.0), 1.0);
    EXPECT_DOUBLE_EQ(phi0(e), 2.0);
    EXPECT_NEAR(phi0(0.5), 0.25 * (1.0 + std::numbers::ln2), 1e-15);
    EXPECT_NEAR(phi0(0.5), 0.42328679513998632, 1e-15);
}

TEST(Phi0, RejectsNegativeRadius) {
    EXPECT_THROW(phi0(-1e-3), DomainError);
    EXPECT_THROW(phi0(NAN), DomainError);
}

TEST(Phi0, Derivatives) {
    EXPECT_DOUBLE_EQ(phi0_derivative(1.0, 1), 1.0);
    EXPECT_DOUBLE_EQ(phi0_derivative(1.0, 2), -1.0);
    EXPECT_NEAR(phi0_derivative(e, 2), -1.0 / (e * e), 1e-15);
    EXPECT_THROW(phi0_derivative(1.0, 3), ArgumentError);
    EXPECT_THROW(phi0_derivative(1.0, 0), ArgumentError);
    EXPECT_THROW(phi0_derivative(0.0, 1), DomainError);
}

TEST(Phi0, C2ContinuityAtOne) {
    // Analytic branches agree exactly at r = 1.
    const double left1 = 1.0 * (1.0 - 2.0 * std::log(1.0)), right1 = 1.0 / 1.0;
    EXPECT_EQ(left1, right1);
    // Finite differences straddling r = 1 match the analytic derivatives.
    const double h = 1e-6;
    for (double r : {1.0 - h, 1.0 + h}) {
        const double fd1 = (phi0(r + 1e-7) - phi0(r - 1e-7)) / 2e-7;
        const double fd2 = (phi0_derivative(r + 1e-7, 1) - phi0_derivative(r - 1e-7, 1)) / 2e-7;
        EXPECT_NEAR(fd1, 1.0, 1e-5);
        EXPECT_NEAR(fd2, -1.0, 1e-5);
    }
    EXPECT_NEAR(phi0(1.0 - h), phi0(1.0 + h), 3e-6);
}

TEST(Segment, EvalExamples) {
    EXPECT_DOUBLE_EQ(segment_eval({1, 0, 0, 0}, 2.0, 0), 4.0);
    EXPECT_NEAR(segment_eval({0, 0, 0, 1}, e, 1), 1.0 / e, 1e-16);
    EXPECT_DOUBLE_EQ(segment_eval({0, 1, 0, 0}, 1.0, 2), 3.0);
    EXPECT_THROW(segment_eval({1, 0, 0, 0}, 0.0, 0), DomainError);
}

TEST(Segment, JumpConstantExamples) {
    EXPECT_EQ(jump_constant({0, 1, 0, 0}), 4.0);
    EXPECT_EQ(jump_constant({1, 0, 5, 0}), 0.0);
    EXPECT_EQ(jump_constant({0, 0, 0, 1}), 0.0);
}

namespace {

SegmentCoeffs random_segment(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    return {u(rng), u(rng), u(rng), u(rng)};
}

// Five-point central differences of the analytic first derivative.
double fd(const SegmentCoeffs& s, double r, int order, double h) {
    auto f = [&](double x) { return segment_eval(s, x, order); };
    return (-f(r + 2 * h) + 8 * f(r + h) - 8 * f(r - h) + f(r - 2 * h)) / (12 * h);
}

}  // namespace

TEST(Segment, JumpConstantIsFourBProperty) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ur(0.3, 6.0);
    for (int i = 0; i < 1000; ++i) {
        const auto s = random_segment(rng);
        EXPECT_EQ(jump_constant(s), 4.0 * s.B);
        // Direct evaluation of r eta''' + eta'' - eta'/r agrees with 4B.
        const double r = ur(rng);
        const double direct = r * segment_eval(s, r, 3) + segment_eval(s, r, 2) - segment_eval(s, r, 1) / r;
        EXPECT_NEAR(direct, 4.0 * s.B, 1e-11 * (1.0 + std::abs(s.A) + std::abs(s.B) + std::abs(s.D)) * (1 + 1 / r));
    }
}

TEST(Segment, AnalyticDerivativesMatchFiniteDifferences) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> ur(0.5, 5.0);
    for (int i = 0; i < 50; ++i) {
        const auto s = random_segment(rng);
        const double r = ur(rng);
        for (int order = 0; order < 3; ++order)
            EXPECT_NEAR(fd(s, r, order, 1e-3), segment_eval(s, r, order + 1), 1e-8 * (1 + std::abs(segment_eval(s, r, order + 1))));
    }
}

TEST(Segment, KernelOfL0ByFiniteDifferences) {
    // L0 eta = r eta'''' + 2 eta''' - eta''/r + eta'/r^2, eta'''' by differencing eta'''.
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> ur(0.5, 5.0);
    for (int i = 0; i < 20; ++i) {
        const auto s = random_segment(rng);
        const double scale = std::abs(s.A) + std::abs(s.B) + std::abs(s.C) + std::abs(s.D);
        for (int k = 0; k < 20; ++k) {
            const double r = ur(rng);
            const double d4 = fd(s, r, 3, 1e-3);
            const double l0 = r * d4 + 2 * segment_eval(s, r, 3) - segment_eval(s, r, 2) / r + segment_eval(s, r, 1) / (r * r);
            EXPECT_LE(std::abs(l0), 1e-4 * scale);
        }
    }
}

TEST(Segment, BoundaryOperatorsClosedForms) {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> ur(0.2, 5.0);
    for (int i = 0; i < 200; ++i) {
        auto s = random_segment(rng);
        const double r = ur(rng);
        const double d1 = segment_eval(s, r, 1), d2 = segment_eval(s, r, 2), d3 = segment_eval(s, r, 3);
        const double scale = 1 + std::abs(s.A) + std::abs(s.B) + std::abs(s.D);
        EXPECT_NEAR(apply_g0(s, r), d3 - d2 / r + d1 / (r * r), 1e-10 * scale / (r * r * r));
        EXPECT_NEAR(apply_r0(s, r), (d2 + d1 / r) / r, 1e-10 * scale / r * (1 + std::abs(std::log(r))));

        auto left = s;
        left.D = 0.0;
        EXPECT_EQ(apply_g0(left, r), 0.0);
        auto right = s;
        right.A = right.B = 0.0;
        EXPECT_EQ(apply_r0(right, r), 0.0);
        EXPECT_EQ(jump_constant(right), 0.0);
    }
}
