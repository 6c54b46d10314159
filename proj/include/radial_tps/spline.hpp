#pragma once

// Interpolating radial thin plate spline profiles, fitted in the dilate form
//
//   sigma(r) = c + sum_k a_k phi0(r / r_k),
//
// with two variants: TypeA matches an extra value alpha at r = 0 (c = alpha),
// TypeB is non-singular (no r^2 ln r term near the origin, sum_k a_k / r_k^2 = 0).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "basis.hpp"
#include "errors.hpp"
#include "linalg.hpp"

namespace radial_tps {

/// Strictly increasing positive radii r_1 < ... < r_n.
class KnotSet {
public:
    KnotSet() = default;

    explicit KnotSet(std::vector<double> radii) : radii_(std::move(radii)) {
        if (radii_.empty()) throw ArgumentError("KnotSet: at least one knot is required");
        for (std::size_t j = 0; j < radii_.size(); ++j) {
            const double r = radii_[j];
            if (!std::isfinite(r) || !(r > 0.0))
                throw ArgumentError("KnotSet: knot " + std::to_string(j + 1) + " must be positive and finite");
            if (j > 0 && !(r - radii_[j - 1] > 1e-12 * r))
                throw ArgumentError("KnotSet: knots must be strictly increasing (knot " + std::to_string(j + 1) +
                                    " does not exceed knot " + std::to_string(j) + ")");
        }
    }

    std::size_t size() const { return radii_.size(); }
    double operator[](std::size_t j) const { return radii_[j]; }
    double front() const { return radii_.front(); }
    double back() const { return radii_.back(); }
    std::span<const double> radii() const { return radii_; }

    /// Largest gap between consecutive knots (0 for a single knot).
    double mesh_size() const {
        double h = 0.0;
        for (std::size_t j = 1; j < radii_.size(); ++j) h = std::max(h, radii_[j] - radii_[j - 1]);
        return h;
    }

    friend bool operator==(const KnotSet&, const KnotSet&) = default;

private:
    std::vector<double> radii_;
};

struct InterpolationData {
    std::vector<double> values;
    std::optional<double> alpha;  // value at r = 0, required for TypeA
};

enum class ModelKind { TypeA, TypeB };

/// Segment coefficients on (0,r_1), (r_1,r_2), ..., (r_n,inf).
struct PiecewiseForm {
    KnotSet knots;
    std::vector<SegmentCoeffs> segments;

    /// Index of the segment containing r; knots belong to the segment on their right.
    std::size_t segment_index(double r) const {
        const auto radii = knots.radii();
        return static_cast<std::size_t>(std::upper_bound(radii.begin(), radii.end(), r) - radii.begin());
    }

    double eval(double r, int order = 0) const {
        if (r == 0.0 && order == 0) return segments.front().C;
        return segment_eval(segments[segment_index(r)], r, order);
    }
};

class DilateModel {
public:
    DilateModel(KnotSet knots, double c, std::vector<double> a, ModelKind kind,
                std::optional<double> alpha = std::nullopt)
        : knots_(std::move(knots)), c_(c), a_(std::move(a)), kind_(kind), alpha_(alpha),
          cache_(std::make_shared<Cache>()) {
        if (a_.size() != knots_.size())
            throw ArgumentError("DilateModel: expected " + std::to_string(knots_.size()) + " coefficients, got " +
                                std::to_string(a_.size()));
        if (!std::isfinite(c_) || !std::all_of(a_.begin(), a_.end(), [](double v) { return std::isfinite(v); }))
            throw DomainError("DilateModel: coefficients must be finite");
        if (kind_ == ModelKind::TypeA) {
            if (!alpha_) throw ArgumentError("DilateModel: TypeA requires alpha");
            if (*alpha_ != c_) throw ArgumentError("DilateModel: TypeA requires c == alpha");
        } else {
            alpha_.reset();
            double side = 0.0, scale = 0.0;
            for (std::size_t k = 0; k < a_.size(); ++k) {
                const double w = 1.0 / (knots_[k] * knots_[k]);
                side += a_[k] * w;
                scale += std::abs(a_[k]) * w;
            }
            if (std::abs(side) > 1e-9 * scale)
                throw ArgumentError("DilateModel: TypeB coefficients violate sum a_k / r_k^2 = 0");
        }
    }

    const KnotSet& knots() const { return knots_; }
    double c() const { return c_; }
    std::span<const double> a() const { return a_; }
    ModelKind kind() const { return kind_; }
    std::optional<double> alpha() const { return alpha_; }

    double operator()(double r) const {
        if (!(r >= 0.0)) throw DomainError("evaluate: radius must be nonnegative");
        double acc = c_;
        for (std::size_t k = 0; k < a_.size(); ++k) acc += a_[k] * phi0(r / knots_[k]);
        return acc;
    }

    double derivative(double r, int order) const {
        if (order != 1 && order != 2) throw ArgumentError("derivative: order must be 1 or 2");
        if (!(r > 0.0)) throw DomainError("derivative: radius must be positive");
        double acc = 0.0;
        for (std::size_t k = 0; k < a_.size(); ++k) {
            const double rk = knots_[k];
            const double scale = order == 1 ? 1.0 / rk : 1.0 / (rk * rk);
            acc += a_[k] * scale * phi0_derivative(r / rk, order);
        }
        return acc;
    }

    /// Built once on first use; copies of the model share the result.
    const PiecewiseForm& piecewise() const& {
        std::call_once(cache_->once, [this] { cache_->form = build_piecewise(); });
        return *cache_->form;
    }
    PiecewiseForm piecewise() const&& { return static_cast<const DilateModel&>(*this).piecewise(); }

private:
    struct Cache {
        std::once_flag once;
        std::optional<PiecewiseForm> form;
    };

    PiecewiseForm build_piecewise() const {
        const std::size_t n = knots_.size();
        PiecewiseForm pf{knots_, std::vector<SegmentCoeffs>(n + 1)};
        // Contribution of a_k phi0(r / r_k): quadratic branch for r < r_k,
        // logarithmic branch for r > r_k.
        for (std::size_t k = 0; k < n; ++k) {
            const double rk = knots_[k], lrk = std::log(rk), w = a_[k] / (rk * rk);
            const SegmentCoeffs quad{w * (1.0 + lrk), -w, 0.0, 0.0};
            const SegmentCoeffs logb{0.0, 0.0, a_[k] * (1.0 - lrk), a_[k]};
            for (std::size_t s = 0; s <= n; ++s) pf.segments[s] += s <= k ? quad : logb;
        }
        for (auto& s : pf.segments) s.C += c_;
        return pf;
    }

    KnotSet knots_;
    double c_;
    std::vector<double> a_;
    ModelKind kind_;
    std::optional<double> alpha_;
    std::shared_ptr<Cache> cache_;
};

inline double evaluate(const DilateModel& model, double r) { return model(r); }

inline double derivative(const DilateModel& model, double r, int order) { return model.derivative(r, order); }

inline PiecewiseForm to_piecewise(const DilateModel& model) { return model.piecewise(); }

/// Coefficient of r^2 ln r on (0, r_1): -sum_k a_k / r_k^2.
inline double singular_coefficient(const DilateModel& model) {
    double acc = 0.0;
    for (std::size_t k = 0; k < model.a().size(); ++k) {
        const double rk = model.knots()[k];
        acc -= model.a()[k] / (rk * rk);
    }
    return acc;
}

/// Collocation matrix phi0(r_j / r_k).
inline Matrix dilate_matrix(const KnotSet& knots) {
    const std::size_t n = knots.size();
    Matrix m(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) m(j, k) = phi0(knots[j] / knots[k]);
    return m;
}

namespace detail {

inline void check_values(const KnotSet& knots, std::span<const double> values) {
    if (values.size() != knots.size())
        throw ArgumentError("fit: " + std::to_string(knots.size()) + " knots but " + std::to_string(values.size()) +
                            " values");
    for (std::size_t j = 0; j < values.size(); ++j)
        if (!std::isfinite(values[j])) throw DomainError("fit: value " + std::to_string(j + 1) + " is not finite");
}

}  // namespace detail

/// Interpolant with sigma(r_j) = values[j] and sigma(0) = alpha.
inline DilateModel fit_type_a(const KnotSet& knots, std::span<const double> values, double alpha) {
    detail::check_values(knots, values);
    if (!std::isfinite(alpha)) throw DomainError("fit_type_a: alpha must be finite");
    std::vector<double> rhs(values.begin(), values.end());
    for (double& v : rhs) v -= alpha;
    auto a = solve_guarded(dilate_matrix(knots), rhs);
    return DilateModel(knots, alpha, std::move(a), ModelKind::TypeA, alpha);
}

/// Non-singular interpolant: unknowns (c, a_1..a_n), side row sum a_k / r_k^2 = 0.
inline DilateModel fit_type_b(const KnotSet& knots, std::span<const double> values) {
    detail::check_values(knots, values);
    const std::size_t n = knots.size();
    Matrix m(n + 1, n + 1);
    for (std::size_t j = 0; j < n; ++j) {
        m(j, 0) = 1.0;
        for (std::size_t k = 0; k < n; ++k) m(j, k + 1) = phi0(knots[j] / knots[k]);
    }
    for (std::size_t k = 0; k < n; ++k) m(n, k + 1) = 1.0 / (knots[k] * knots[k]);
    std::vector<double> rhs(values.begin(), values.end());
    rhs.push_back(0.0);
    auto sol = solve_guarded(m, rhs);
    std::vector<double> a(sol.begin() + 1, sol.end());
    return DilateModel(knots, sol[0], std::move(a), ModelKind::TypeB);
}

inline DilateModel fit_type_a(const KnotSet& knots, const InterpolationData& data) {
    if (!data.alpha) throw ArgumentError("fit_type_a: alpha is required");
    return fit_type_a(knots, data.values, *data.alpha);
}

inline DilateModel fit_type_b(const KnotSet& knots, const InterpolationData& data) {
    return fit_type_b(knots, data.values);
}

}  // namespace radial_tps
