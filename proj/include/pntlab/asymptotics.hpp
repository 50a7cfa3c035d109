#pragma once
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "pntlab/errors.hpp"
#include "pntlab/primes.hpp"
#include "pntlab/quadrature.hpp"

namespace pntlab {

// ---------------------------------------------------------------------
// Logarithmic integral Li(x) = integral of dt/log t from 2 to x.
// ---------------------------------------------------------------------
struct LiValue {
    double x = 0.0;
    double li = 0.0;
    double quad_err = 0.0;
};

// Default tolerance: 1e-9 relative against the x/log x scale.
inline double default_li_tolerance(double x) noexcept {
    const double scale = x > 3.0 ? x / std::log(x) : 1.0;
    return 1e-9 * std::max(1.0, scale);
}

// Adaptive Simpson on a smooth, monotone integrand; split at powers of
// ten so the recursion depth stays flat out to x = 1e12.
inline LiValue li(double x, double tol) {
    if (!(x >= 2.0)) throw domain_error("li: x must be >= 2");
    if (!(tol > 0.0)) throw domain_error("li: tol must be > 0");
    if (x == 2.0) return {x, 0.0, 0.0};
    std::vector<double> cuts{2.0};
    for (double edge = 10.0; edge < x; edge *= 10.0) cuts.push_back(edge);
    cuts.push_back(x);
    const double piece_tol = tol / static_cast<double>(cuts.size());
    const auto integrand = [](double t) { return 1.0 / std::log(t); };
    LiValue out;
    out.x = x;
    CompensatedSum acc;
    double err = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        auto piece = adaptive_simpson(integrand, cuts[i], cuts[i + 1], piece_tol);
        acc.add(piece.value);
        err += piece.err;
    }
    out.li = acc.value();
    out.quad_err = err + acc.error_bound();
    return out;
}

inline LiValue li(double x) { return li(x, default_li_tolerance(x)); }

// Li(x) / (x / log x); approaches 1 from above as x grows.
inline double li_over_x_logx(double x) {
    if (!(x > std::exp(1.0))) throw domain_error("li_over_x_logx: x must exceed e");
    const double denom = x / std::log(x);
    return li(x, std::max(1e-12, 1e-12 * denom)).li / denom;
}

// ---------------------------------------------------------------------
// Comparison table: x, pi(x), round(Li(x)), round(x/log x).
// ---------------------------------------------------------------------
struct TableRow {
    std::uint64_t x = 0;
    std::uint64_t pi = 0;
    long long li_rounded = 0;
    long long x_over_logx_rounded = 0;
    PiMethod pi_method = PiMethod::sieve;
};

struct TableOptions {
    double li_tol = 1e-3;  // absolute; keeps every rounding decision safe
    PiOptions pi;
};

// round half away from zero
inline long long round_half_away(double v) noexcept { return std::llround(v); }

inline TableRow table_row(std::uint64_t x, const TableOptions& opt = {}) {
    if (x < 2) throw domain_error("table_row: x must be >= 2");
    const double xd = static_cast<double>(x);
    const auto pc = prime_pi(x, opt.pi);
    TableRow row;
    row.x = x;
    row.pi = pc.pi;
    row.pi_method = pc.method;
    row.li_rounded = round_half_away(li(xd, opt.li_tol).li);
    row.x_over_logx_rounded = round_half_away(xd / std::log(xd));
    return row;
}

inline std::vector<TableRow> table_one(const std::vector<std::uint64_t>& xs,
                                       const TableOptions& opt = {}) {
    std::vector<TableRow> rows;
    rows.reserve(xs.size());
    for (std::uint64_t x : xs) rows.push_back(table_row(x, opt));
    return rows;
}

// ---------------------------------------------------------------------
// Ratio series for the squeeze checks.
// ---------------------------------------------------------------------
struct RatioSeries {
    std::string name;
    std::vector<double> grid;
    std::vector<double> ratios;
};

namespace detail {

inline void require_increasing_min(const std::vector<double>& grid, double lo, const char* who) {
    if (grid.empty()) throw domain_error(std::string(who) + ": empty grid");
    if (grid.front() < lo)
        throw domain_error(std::string(who) + ": grid must start at or above " + std::to_string(lo));
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (grid[i] <= grid[i - 1]) throw domain_error(std::string(who) + ": grid must be increasing");
}

inline void check_finite(RatioSeries& s) {
    for (double r : s.ratios)
        if (!std::isfinite(r)) throw numeric_error(s.name + ": non-finite ratio");
}

} // namespace detail

// pi(x) log x / x.  Dense grids share one sieve pass; sparse grids go
// point-by-point so the sublinear counter can reach 1e12.
inline RatioSeries pnt_ratio_series(const std::vector<double>& grid, const PiOptions& opt = {}) {
    detail::require_increasing_min(grid, 2.0, "pnt_ratio_series");
    RatioSeries out{"pi_logx_over_x", grid, {}};
    out.ratios.reserve(grid.size());
    if (grid.size() > 32 && grid.back() <= 1e9) {
        auto samples = prime_grid_pass(grid, opt.sieve);
        for (const auto& s : samples)
            out.ratios.push_back(static_cast<double>(s.pi) * std::log(s.x) / s.x);
    } else {
        for (double x : grid) {
            const auto pc = prime_pi(static_cast<std::uint64_t>(x), opt);
            out.ratios.push_back(static_cast<double>(pc.pi) * std::log(x) / x);
        }
    }
    detail::check_finite(out);
    return out;
}

// theta(x)/x over a grid (single sieve pass).
inline RatioSeries theta_ratio_series(const std::vector<double>& grid, const SieveOptions& opt = {}) {
    detail::require_increasing_min(grid, 2.0, "theta_ratio_series");
    RatioSeries out{"theta_over_x", grid, {}};
    out.ratios.reserve(grid.size());
    for (const auto& tv : chebyshev_theta_grid(grid, opt)) out.ratios.push_back(tv.theta / tv.x);
    detail::check_finite(out);
    return out;
}

// p_n / (n log n) over an increasing grid of indices n >= 2.
inline RatioSeries pn_ratio_series(const std::vector<std::uint64_t>& n_grid,
                                   const SieveOptions& opt = {}) {
    if (n_grid.empty()) throw domain_error("pn_ratio_series: empty grid");
    if (n_grid.front() < 2) throw domain_error("pn_ratio_series: n must be >= 2");
    for (std::size_t i = 1; i < n_grid.size(); ++i)
        if (n_grid[i] <= n_grid[i - 1]) throw domain_error("pn_ratio_series: grid must be increasing");
    RatioSeries out{"pn_over_n_logn", {}, {}};
    out.grid.reserve(n_grid.size());
    out.ratios.reserve(n_grid.size());
    // one sieve pass sized by the largest index
    const std::uint64_t n_top = n_grid.back();
    const double nd = static_cast<double>(n_top);
    std::uint64_t bound = 16;
    if (n_top >= 6)
        bound = static_cast<std::uint64_t>(nd * (std::log(nd) + std::log(std::log(nd)))) + 8;
    std::uint64_t count = 0;
    std::size_t next = 0;
    for_each_prime(
        bound,
        [&](std::uint64_t p) {
            ++count;
            while (next < n_grid.size() && n_grid[next] == count) {
                const double n = static_cast<double>(n_grid[next]);
                out.grid.push_back(n);
                out.ratios.push_back(static_cast<double>(p) / (n * std::log(n)));
                ++next;
            }
        },
        opt);
    if (next != n_grid.size()) throw numeric_error("pn_ratio_series: sieve bound fell short");
    detail::check_finite(out);
    return out;
}

// |pi(x) - Li(x)| / (sqrt(x) log x), using the table's rounded Li values
// so the emitted series matches the published comparison arithmetic.
inline RatioSeries li_error_normalization(const std::vector<double>& grid,
                                          const TableOptions& opt = {}) {
    detail::require_increasing_min(grid, 1e3, "li_error_normalization");
    if (grid.back() > 1e12)
        throw domain_error("li_error_normalization: grid exceeds the covered range [1e3, 1e12]");
    RatioSeries out{"pi_li_gap_normalized", grid, {}};
    for (double x : grid) {
        const auto row = table_row(static_cast<std::uint64_t>(x), opt);
        const double gap = std::abs(static_cast<double>(row.pi) - static_cast<double>(row.li_rounded));
        out.ratios.push_back(gap / (std::sqrt(x) * std::log(x)));
    }
    detail::check_finite(out);
    return out;
}

// (alpha - 1 - log alpha, 1 - beta + log beta): the strictly positive /
// strictly negative pair that drives the final squeeze.
inline std::pair<double, double> sandwich_positivity(double alpha, double beta) {
    if (!(alpha > 1.0)) throw domain_error("sandwich_positivity: alpha must exceed 1");
    if (!(beta > 0.0 && beta < 1.0)) throw domain_error("sandwich_positivity: beta must lie in (0,1)");
    return {alpha - 1.0 - std::log(alpha), 1.0 - beta + std::log(beta)};
}

// Log-spaced grid helper shared by the CLI and the verification suite.
inline std::vector<double> log_grid(double lo, double hi, std::size_t points) {
    if (!(lo > 0.0) || !(hi > lo) || points < 2) throw domain_error("log_grid: bad parameters");
    std::vector<double> g(points);
    const double step = (std::log(hi) - std::log(lo)) / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) g[i] = std::exp(std::log(lo) + step * static_cast<double>(i));
    g.front() = lo;
    g.back() = hi;
    // de-duplicate after rounding
    std::vector<double> out;
    out.reserve(points);
    for (double v : g)
        if (out.empty() || v > out.back()) out.push_back(v);
    return out;
}

} // namespace pntlab
