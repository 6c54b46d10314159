#pragma once

// Grid-refinement benchmark: uniform knots on [1, 2], both spline fits,
// maximum error on a ten-times finer grid and the observed order
// kappa_h = log2(E_h / E_{h/2}).

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <exception>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "errors.hpp"
#include "profile.hpp"
#include "spline.hpp"

namespace radial_tps {

enum class BuiltinKind { Feps, Linear, Cos3 };

struct BuiltinProfile {
    BuiltinKind kind = BuiltinKind::Linear;
    double epsilon = 0.0;  // Feps only

    static BuiltinProfile feps(double eps) {
        if (!(eps > 0.0) || !std::isfinite(eps)) throw ArgumentError("feps: epsilon must be positive");
        return {BuiltinKind::Feps, eps};
    }
    static BuiltinProfile linear() { return {BuiltinKind::Linear, 0.0}; }
    static BuiltinProfile cos3() { return {BuiltinKind::Cos3, 0.0}; }

    bool smooth() const { return kind != BuiltinKind::Feps; }
};

/// The benchmark data functions. feps(eps) is |r - 1|^(3/2 + eps) on the
/// benchmark interval; its mollifier vanishes at 0 so alpha = 0. The smooth
/// profiles keep their own value at 0 (mollifier equal to 1 on [0, 2]).
inline DataProfile make_profile(const BuiltinProfile& p) {
    switch (p.kind) {
        case BuiltinKind::Feps: {
            const double mu = 1.5 + p.epsilon;
            char name[64];
            std::snprintf(name, sizeof name, "feps:%g", p.epsilon);
            return DataProfile{name,
                               [mu](double r) { return std::pow(std::abs(r - 1.0), mu); },
                               [mu](double r) {
                                   const double s = r >= 1.0 ? 1.0 : -1.0;
                                   return s * mu * std::pow(std::abs(r - 1.0), mu - 1.0);
                               },
                               [mu](double r) { return mu * (mu - 1.0) * std::pow(std::abs(r - 1.0), mu - 2.0); },
                               0.0};
        }
        case BuiltinKind::Linear:
            return DataProfile{"linear", [](double r) { return r; }, [](double) { return 1.0; },
                               [](double) { return 0.0; }, 0.0};
        case BuiltinKind::Cos3:
            return DataProfile{"cos3", [](double r) { return std::cos(3.0 * r); },
                               [](double r) { return -3.0 * std::sin(3.0 * r); },
                               [](double r) { return -9.0 * std::cos(3.0 * r); }, 1.0};
    }
    throw ArgumentError("make_profile: unknown profile");
}

/// n_minus_1 + 1 equispaced knots r_j = 1 + (j - 1) / n_minus_1 on [1, 2].
inline KnotSet uniform_knots(std::size_t n_minus_1) {
    if (n_minus_1 < 1) throw ArgumentError("uniform_knots: need at least one subinterval");
    const double h = 1.0 / static_cast<double>(n_minus_1);
    std::vector<double> r(n_minus_1 + 1);
    for (std::size_t j = 0; j <= n_minus_1; ++j) r[j] = 1.0 + h * static_cast<double>(j);
    r.back() = 2.0;
    return KnotSet(std::move(r));
}

/// Maximum |f - sigma| at the 9 interior points r_j + l (r_{j+1} - r_j) / 10,
/// l = 1..9, of every knot interval. Knots themselves are not sampled.
inline double max_error_fine_grid(const DilateModel& model, const DataProfile& f, const KnotSet& knots) {
    double err = 0.0;
    for (std::size_t j = 0; j + 1 < knots.size(); ++j) {
        const double h = knots[j + 1] - knots[j];
        for (int l = 1; l <= 9; ++l) {
            const double r = knots[j] + h * l / 10.0;
            err = std::max(err, std::abs(f(r) - model(r)));
        }
    }
    return err;
}

/// Composite trapezoid estimate of ||f - sigma||_{L2[r_1, r_n]} on the same
/// ten-times finer grid (knots included as trapezoid nodes).
inline double l2_error_fine_grid(const DilateModel& model, const DataProfile& f, const KnotSet& knots) {
    double acc = 0.0;
    for (std::size_t j = 0; j + 1 < knots.size(); ++j) {
        const double h = (knots[j + 1] - knots[j]) / 10.0;
        double prev = f(knots[j]) - model(knots[j]);
        for (int l = 1; l <= 10; ++l) {
            const double r = l == 10 ? knots[j + 1] : knots[j] + h * l;
            const double cur = f(r) - model(r);
            acc += 0.5 * h * (prev * prev + cur * cur);
            prev = cur;
        }
    }
    return std::sqrt(acc);
}

struct ConvergenceRow {
    std::size_t n_minus_1 = 0;
    double E_A = NAN;
    std::optional<double> kappa_A;
    double E_B = NAN;
    std::optional<double> kappa_B;
    std::optional<std::string> error;  // solver failure at this level
};

inline double observed_order(double coarse, double fine) { return std::log2(coarse / fine); }

/// One row per level (n - 1 values); levels run in parallel on up to
/// `threads` workers, rows come back in input order.
inline std::vector<ConvergenceRow> run_convergence(const BuiltinProfile& profile, const std::vector<std::size_t>& levels,
                                                   unsigned threads = 1) {
    for (std::size_t i = 1; i < levels.size(); ++i)
        if (levels[i] <= levels[i - 1]) throw ArgumentError("run_convergence: levels must be strictly ascending");
    const DataProfile f = make_profile(profile);
    std::vector<ConvergenceRow> rows(levels.size());

    auto work = [&](std::size_t i) {
        ConvergenceRow& row = rows[i];
        row.n_minus_1 = levels[i];
        try {
            const KnotSet knots = uniform_knots(levels[i]);
            std::vector<double> values(knots.size());
            for (std::size_t j = 0; j < knots.size(); ++j) values[j] = f(knots[j]);
            row.E_A = max_error_fine_grid(fit_type_a(knots, values, f.value_at_zero), f, knots);
            row.E_B = max_error_fine_grid(fit_type_b(knots, values), f, knots);
        } catch (const std::exception& e) {
            row.error = e.what();
        }
    };

    threads = std::max(1u, threads);
    if (threads == 1 || levels.size() < 2) {
        for (std::size_t i = 0; i < levels.size(); ++i) work(i);
    } else {
        // Largest levels first so the expensive solves overlap.
        std::vector<std::thread> pool;
        std::atomic<std::size_t> next{0};
        for (unsigned w = 0; w < std::min<std::size_t>(threads, levels.size()); ++w)
            pool.emplace_back([&] {
                for (std::size_t k; (k = next.fetch_add(1)) < levels.size();) work(levels.size() - 1 - k);
            });
        for (auto& t : pool) t.join();
    }

    for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
        if (rows[i].error || rows[i + 1].error) continue;
        rows[i].kappa_A = observed_order(rows[i].E_A, rows[i + 1].E_A);
        rows[i].kappa_B = observed_order(rows[i].E_B, rows[i + 1].E_B);
    }
    return rows;
}

/// n - 1 = 2^first .. 2^last.
inline std::vector<std::size_t> dyadic_levels(unsigned first, unsigned last) {
    if (first > last || last > 20) throw ArgumentError("dyadic_levels: need first <= last <= 20");
    std::vector<std::size_t> levels;
    for (unsigned m = first; m <= last; ++m) levels.push_back(std::size_t{1} << m);
    return levels;
}

/// Table layout: n_minus_1,E_A,kappa_A,E_B,kappa_B with errors in 5-digit
/// scientific notation and orders to 4 decimals; missing orders are empty.
inline void write_convergence_csv(std::ostream& os, const std::vector<ConvergenceRow>& rows) {
    os << "n_minus_1,E_A,kappa_A,E_B,kappa_B\n";
    char buf[64];
    auto num = [&](double v, const char* fmt) {
        std::snprintf(buf, sizeof buf, fmt, v);
        return std::string(buf);
    };
    for (const auto& row : rows) {
        os << row.n_minus_1 << ',' << (row.error ? "" : num(row.E_A, "%.4e")) << ','
           << (row.kappa_A ? num(*row.kappa_A, "%.4f") : "") << ',' << (row.error ? "" : num(row.E_B, "%.4e")) << ','
           << (row.kappa_B ? num(*row.kappa_B, "%.4f") : "") << '\n';
    }
}

struct ConvergenceDiagnostics {
    std::vector<std::string> errors;    // theory violations
    std::vector<std::string> warnings;  // conjecture and monotonicity checks
};

/// Order checks on a finished run: two consecutive orders below 1.45 is an
/// error for any energy-space data; smooth profiles are expected (but not
/// guaranteed) to approach order 2; E should not grow under refinement.
inline ConvergenceDiagnostics diagnose(const BuiltinProfile& profile, const std::vector<ConvergenceRow>& rows) {
    ConvergenceDiagnostics d;
    auto check_low = [&](const char* label, auto get) {
        for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
            const auto a = get(rows[i]), b = get(rows[i + 1]);
            if (a && b && *a < 1.45 && *b < 1.45)
                d.errors.push_back(std::string("order ") + label + " below 1.45 at two consecutive levels from n-1=" +
                                   std::to_string(rows[i].n_minus_1));
        }
    };
    check_low("A", [](const ConvergenceRow& r) { return r.kappa_A; });
    check_low("B", [](const ConvergenceRow& r) { return r.kappa_B; });

    for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
        if (rows[i].error || rows[i + 1].error) continue;
        if (rows[i + 1].E_A > rows[i].E_A || rows[i + 1].E_B > rows[i].E_B)
            d.warnings.push_back("error increased from n-1=" + std::to_string(rows[i].n_minus_1) + " to " +
                                 std::to_string(rows[i + 1].n_minus_1));
    }
    if (profile.smooth() && rows.size() >= 2) {
        const auto& last = rows[rows.size() - 2];
        for (auto [label, k] : {std::pair{"A", last.kappa_A}, std::pair{"B", last.kappa_B}})
            if (k && std::abs(*k - 2.0) > 0.01)
                d.warnings.push_back(std::string("saturation-order conjecture: final kappa_") + label + " = " +
                                     std::to_string(*k) + " not within 0.01 of 2");
    }
    for (const auto& row : rows)
        if (row.error) d.errors.push_back("n-1=" + std::to_string(row.n_minus_1) + ": " + *row.error);
    return d;
}

}  // namespace radial_tps
