#pragma once

// Brute-force reference for the spline fits: solves directly for the four
// null-space amplitudes (r^2, r^2 ln r, 1, ln r) on every knot interval from
// the C^2 matching, interpolation and end conditions. Shares nothing with the
// dilate-form solver (own elimination, own basis derivatives).

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace oracle {

/// Basis values and derivatives at r: rows are d^0, d^1, d^2; columns are
/// r^2, r^2 ln r, 1, ln r.
inline std::array<std::array<double, 4>, 3> basis_rows(double r) {
    const double l = std::log(r);
    return {{{r * r, r * r * l, 1.0, l},
             {2.0 * r, 2.0 * r * l + r, 0.0, 1.0 / r},
             {2.0, 2.0 * l + 3.0, 0.0, -1.0 / (r * r)}}};
}

/// Gaussian elimination with partial pivoting on an augmented dense system.
inline std::vector<double> gauss_solve(std::vector<std::vector<double>> m, std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(m[i][k]) > std::abs(m[p][k])) p = i;
        if (m[p][k] == 0.0) throw std::runtime_error("oracle: singular system");
        std::swap(m[p], m[k]);
        std::swap(b[p], b[k]);
        for (std::size_t i = k + 1; i < n; ++i) {
            const double f = m[i][k] / m[k][k];
            for (std::size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
            b[i] -= f * b[k];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        double acc = b[i];
        for (std::size_t j = i + 1; j < n; ++j) acc -= m[i][j] * x[j];
        x[i] = acc / m[i][i];
    }
    return x;
}

/// Piecewise spline on [r_1, r_n] (type B) or [0, r_n] (type A).
struct PiecewiseSolution {
    std::vector<double> knots;
    bool has_head = false;                     // segment on (0, r_1), type A only
    std::vector<std::array<double, 4>> segs;   // head (if any) then (r_j, r_{j+1})

    double operator()(double r) const {
        if (has_head && r < knots.front()) {
            if (r == 0.0) return segs[0][2];
            const auto b = basis_rows(r);
            double v = 0.0;
            for (int c = 0; c < 4; ++c) v += segs[0][c] * b[0][c];
            return v;
        }
        std::size_t j = 0;
        while (j + 2 < knots.size() && r >= knots[j + 1]) ++j;
        const auto& s = segs[(has_head ? 1 : 0) + j];
        const auto b = basis_rows(r);
        double v = 0.0;
        for (int c = 0; c < 4; ++c) v += s[c] * b[0][c];
        return v;
    }
};

/// Non-singular fit restricted to [r_1, r_n]: 4(n-1) unknowns; 3 matching
/// conditions at each interior knot, n interpolation conditions, and the end
/// conditions r^2 s'' - r s' = 0 at r_1+ and r^2 s'' + r s' = 0 at r_n-.
inline PiecewiseSolution solve_type_b(const std::vector<double>& knots, const std::vector<double>& values) {
    const std::size_t n = knots.size();
    if (n < 2) throw std::invalid_argument("oracle type B needs n >= 2");
    const std::size_t m = n - 1, dim = 4 * m;
    std::vector<std::vector<double>> a;
    std::vector<double> rhs;
    auto add_row = [&](std::vector<double> row, double v) {
        a.push_back(std::move(row));
        rhs.push_back(v);
    };
    for (std::size_t j = 0; j < n; ++j) {  // interpolation
        const std::size_t seg = j == 0 ? 0 : j - 1;
        const auto b = basis_rows(knots[j]);
        std::vector<double> row(dim, 0.0);
        for (int c = 0; c < 4; ++c) row[4 * seg + c] = b[0][c];
        add_row(row, values[j]);
    }
    for (std::size_t j = 1; j + 1 < n; ++j) {  // C^0..C^2 at interior knots
        const auto b = basis_rows(knots[j]);
        for (int d = 0; d < 3; ++d) {
            std::vector<double> row(dim, 0.0);
            for (int c = 0; c < 4; ++c) {
                row[4 * (j - 1) + c] = b[d][c];
                row[4 * j + c] = -b[d][c];
            }
            add_row(row, 0.0);
        }
    }
    {
        const double r = knots.front();
        const auto b = basis_rows(r);
        std::vector<double> row(dim, 0.0);
        for (int c = 0; c < 4; ++c) row[c] = r * r * b[2][c] - r * b[1][c];
        add_row(row, 0.0);
    }
    {
        const double r = knots.back();
        const auto b = basis_rows(r);
        std::vector<double> row(dim, 0.0);
        for (int c = 0; c < 4; ++c) row[4 * (m - 1) + c] = r * r * b[2][c] + r * b[1][c];
        add_row(row, 0.0);
    }
    const auto x = gauss_solve(a, rhs);
    PiecewiseSolution s{knots, false, {}};
    for (std::size_t k = 0; k < m; ++k) s.segs.push_back({x[4 * k], x[4 * k + 1], x[4 * k + 2], x[4 * k + 3]});
    return s;
}

/// Fit matching alpha at 0, on [0, r_n]: head segment (A, B, C; no ln r term)
/// plus 4(n-1) interval unknowns = 4n - 1 unknowns.
inline PiecewiseSolution solve_type_a(const std::vector<double>& knots, const std::vector<double>& values,
                                      double alpha) {
    const std::size_t n = knots.size();
    const std::size_t dim = 4 * n;  // head carries 4 slots, its ln r slot pinned to 0
    std::vector<std::vector<double>> a;
    std::vector<double> rhs;
    auto add_row = [&](std::vector<double> row, double v) {
        a.push_back(std::move(row));
        rhs.push_back(v);
    };
    {
        std::vector<double> row(dim, 0.0);
        row[3] = 1.0;
        add_row(row, 0.0);
    }
    {
        std::vector<double> row(dim, 0.0);
        row[2] = 1.0;
        add_row(row, alpha);
    }
    for (std::size_t j = 0; j < n; ++j) {  // interpolation from the left segment
        const auto b = basis_rows(knots[j]);
        std::vector<double> row(dim, 0.0);
        for (int c = 0; c < 4; ++c) row[4 * j + c] = b[0][c];
        add_row(row, values[j]);
    }
    for (std::size_t j = 0; j + 1 < n; ++j) {  // C^0..C^2 at r_1..r_{n-1}
        const auto b = basis_rows(knots[j]);
        for (int d = 0; d < 3; ++d) {
            std::vector<double> row(dim, 0.0);
            for (int c = 0; c < 4; ++c) {
                row[4 * j + c] = b[d][c];
                row[4 * (j + 1) + c] = -b[d][c];
            }
            add_row(row, 0.0);
        }
    }
    {
        const double r = knots.back();
        const auto b = basis_rows(r);
        std::vector<double> row(dim, 0.0);
        for (int c = 0; c < 4; ++c) row[4 * (n - 1) + c] = r * r * b[2][c] + r * b[1][c];
        add_row(row, 0.0);
    }
    const auto x = gauss_solve(a, rhs);
    PiecewiseSolution s{knots, true, {}};
    for (std::size_t k = 0; k < n; ++k) s.segs.push_back({x[4 * k], x[4 * k + 1], x[4 * k + 2], x[4 * k + 3]});
    return s;
}

}  // namespace oracle
