#pragma once

// Small dense linear algebra: row-major matrix, LU with partial pivoting,
// Hager/Higham 1-norm condition estimate, one step of iterative refinement.

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"

namespace radial_tps {

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

    std::vector<double> multiply(std::span<const double> x) const {
        std::vector<double> y(rows_, 0.0);
        for (std::size_t i = 0; i < rows_; ++i) {
            const auto r = row(i);
            double acc = 0.0;
            for (std::size_t j = 0; j < cols_; ++j) acc += r[j] * x[j];
            y[i] = acc;
        }
        return y;
    }

    double norm1() const {
        std::vector<double> colsum(cols_, 0.0);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) colsum[j] += std::abs((*this)(i, j));
        return colsum.empty() ? 0.0 : *std::max_element(colsum.begin(), colsum.end());
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// PA = LU with partial pivoting. Throws NumericalFailure on an exactly zero pivot.
class LuDecomposition {
public:
    explicit LuDecomposition(Matrix a) : lu_(std::move(a)), perm_(lu_.rows()) {
        const std::size_t n = lu_.rows();
        if (lu_.cols() != n) throw ArgumentError("LuDecomposition: matrix must be square");
        norm1_ = lu_.norm1();
        for (std::size_t i = 0; i < n; ++i) perm_[i] = i;

        for (std::size_t k = 0; k < n; ++k) {
            std::size_t p = k;
            double best = std::abs(lu_(k, k));
            for (std::size_t i = k + 1; i < n; ++i) {
                if (std::abs(lu_(i, k)) > best) {
                    best = std::abs(lu_(i, k));
                    p = i;
                }
            }
            if (best == 0.0 || !std::isfinite(best))
                throw NumericalFailure("LU: singular matrix (zero pivot in column " + std::to_string(k) + ")",
                                       INFINITY);
            if (p != k) {
                std::swap_ranges(lu_.row(k).begin(), lu_.row(k).end(), lu_.row(p).begin());
                std::swap(perm_[k], perm_[p]);
            }
            const auto pivot_row = lu_.row(k);
            const double inv = 1.0 / pivot_row[k];
            for (std::size_t i = k + 1; i < n; ++i) {
                auto ri = lu_.row(i);
                const double m = ri[k] * inv;
                ri[k] = m;
                if (m == 0.0) continue;
                for (std::size_t j = k + 1; j < n; ++j) ri[j] -= m * pivot_row[j];
            }
        }
    }

    std::size_t size() const { return lu_.rows(); }

    std::vector<double> solve(std::span<const double> b) const {
        const std::size_t n = size();
        std::vector<double> x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = b[perm_[i]];
        for (std::size_t i = 0; i < n; ++i) {
            const auto r = lu_.row(i);
            double acc = x[i];
            for (std::size_t j = 0; j < i; ++j) acc -= r[j] * x[j];
            x[i] = acc;
        }
        for (std::size_t i = n; i-- > 0;) {
            const auto r = lu_.row(i);
            double acc = x[i];
            for (std::size_t j = i + 1; j < n; ++j) acc -= r[j] * x[j];
            x[i] = acc / r[i];
        }
        return x;
    }

    /// Solves A^T x = b.
    std::vector<double> solve_transposed(std::span<const double> b) const {
        const std::size_t n = size();
        std::vector<double> y(b.begin(), b.end());
        // U^T z = b
        for (std::size_t i = 0; i < n; ++i) {
            y[i] /= lu_(i, i);
            const double yi = y[i];
            const auto r = lu_.row(i);
            for (std::size_t j = i + 1; j < n; ++j) y[j] -= r[j] * yi;
        }
        // L^T w = z
        for (std::size_t i = n; i-- > 0;) {
            const double yi = y[i];
            const auto r = lu_.row(i);
            for (std::size_t j = 0; j < i; ++j) y[j] -= r[j] * yi;
        }
        std::vector<double> x(n);
        for (std::size_t i = 0; i < n; ++i) x[perm_[i]] = y[i];
        return x;
    }

    /// Estimate of ||A||_1 ||A^-1||_1 (Hager's method with Higham's extra probe).
    double condition_estimate() const {
        const std::size_t n = size();
        if (n == 0) return 0.0;
        std::vector<double> x(n, 1.0 / static_cast<double>(n));
        double est = 0.0;
        std::size_t last_j = n;
        for (int iter = 0; iter < 5; ++iter) {
            auto y = solve(x);
            double ynorm = 0.0;
            for (double v : y) ynorm += std::abs(v);
            if (iter > 0 && ynorm <= est) break;
            est = ynorm;
            std::vector<double> xi(n);
            for (std::size_t i = 0; i < n; ++i) xi[i] = y[i] >= 0.0 ? 1.0 : -1.0;
            auto z = solve_transposed(xi);
            std::size_t j = 0;
            for (std::size_t i = 1; i < n; ++i)
                if (std::abs(z[i]) > std::abs(z[j])) j = i;
            if (j == last_j) break;
            last_j = j;
            std::fill(x.begin(), x.end(), 0.0);
            x[j] = 1.0;
        }
        // Alternating-sign probe guards against the estimate stalling on special structure.
        std::vector<double> alt(n);
        for (std::size_t i = 0; i < n; ++i)
            alt[i] = (i % 2 == 0 ? 1.0 : -1.0) * (1.0 + static_cast<double>(i) / static_cast<double>(std::max<std::size_t>(n - 1, 1)));
        auto w = solve(alt);
        double wnorm = 0.0;
        for (double v : w) wnorm += std::abs(v);
        est = std::max(est, 2.0 * wnorm / (3.0 * static_cast<double>(n)));
        return est * norm1_;
    }

private:
    Matrix lu_;
    std::vector<std::size_t> perm_;
    double norm1_ = 0.0;
};

/// Largest 1-norm condition estimate accepted by solve_guarded (rcond < eps rule).
inline constexpr double kConditionLimit = 1.0 / DBL_EPSILON;

/// Solves Ax = b by LU, refuses systems whose condition estimate exceeds
/// `condition_limit`, then applies one step of iterative refinement.
inline std::vector<double> solve_guarded(const Matrix& a, std::span<const double> b,
                                         double condition_limit = kConditionLimit,
                                         double* condition_out = nullptr) {
    LuDecomposition lu(a);
    const double cond = lu.condition_estimate();
    if (condition_out) *condition_out = cond;
    if (!(cond <= condition_limit))
        throw NumericalFailure("linear system too ill-conditioned (condition estimate " +
                                   std::to_string(cond) + ")",
                               cond);
    auto x = lu.solve(b);
    auto ax = a.multiply(x);
    std::vector<double> residual(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) residual[i] = b[i] - ax[i];
    const auto dx = lu.solve(residual);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += dx[i];
    return x;
}

/// Numerical rank by Gaussian elimination with complete pivoting; pivots below
/// `rel_tol` times the largest entry count as zero.
inline std::size_t matrix_rank(Matrix a, double rel_tol = 1e-12) {
    const std::size_t m = a.rows(), n = a.cols();
    double scale = 0.0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::abs(a(i, j)));
    if (scale == 0.0) return 0;
    std::vector<std::size_t> colp(n);
    for (std::size_t j = 0; j < n; ++j) colp[j] = j;
    std::size_t rank = 0;
    for (std::size_t k = 0; k < std::min(m, n); ++k) {
        std::size_t pi = k, pj = k;
        double best = 0.0;
        for (std::size_t i = k; i < m; ++i)
            for (std::size_t j = k; j < n; ++j)
                if (std::abs(a(i, colp[j])) > best) {
                    best = std::abs(a(i, colp[j]));
                    pi = i;
                    pj = j;
                }
        if (best <= rel_tol * scale) break;
        if (pi != k) std::swap_ranges(a.row(k).begin(), a.row(k).end(), a.row(pi).begin());
        std::swap(colp[k], colp[pj]);
        const double piv = a(k, colp[k]);
        for (std::size_t i = k + 1; i < m; ++i) {
            const double f = a(i, colp[k]) / piv;
            for (std::size_t j = k; j < n; ++j) a(i, colp[j]) -= f * a(k, colp[j]);
        }
        ++rank;
    }
    return rank;
}

}  // namespace radial_tps
