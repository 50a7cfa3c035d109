#pragma once
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "pntlab/errors.hpp"
#include "pntlab/zeta.hpp"

namespace pntlab {

struct Bracket {
    double t_lo = 0.0;
    double t_hi = 0.0;
};

struct ZeroRecord {
    double t = 0.0;         // ordinate of the zero on the critical line
    double residual = 0.0;  // |zeta(1/2 + it)| at the refined point
    Bracket bracket;
};

struct ZeroSearchOptions {
    double threshold_sq = 0.25;  // |zeta|^2 candidacy ceiling for local minima
    double eval_tol = 1e-12;
    double fd_step = 1e-6;
    int max_newton_iters = 50;
    ZetaOptions zeta;
};

namespace detail {

inline Complex critical_line_value(double t, const ZeroSearchOptions& opt) {
    return zeta_eta_oracle(Complex(0.5, t), opt.eval_tol, opt.zeta).value;
}

} // namespace detail

// Walk |zeta(1/2+it)|^2 over [t_lo, t_hi] and return one bracket around
// each interior local minimum that dips below the candidacy threshold.
inline std::vector<Bracket> scan_critical_line(double t_lo, double t_hi, double step,
                                               const ZeroSearchOptions& opt = {}) {
    if (!(0.0 < t_lo && t_lo < t_hi)) throw domain_error("scan_critical_line: need 0 < t_lo < t_hi");
    if (!(step > 0.0 && step <= 0.1)) throw domain_error("scan_critical_line: need 0 < step <= 0.1");
    std::vector<double> ts;
    for (double t = t_lo; t < t_hi + step / 2.0; t += step) ts.push_back(std::min(t, t_hi));
    std::vector<double> mag_sq(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const Complex z = detail::critical_line_value(ts[i], opt);
        mag_sq[i] = std::norm(z);
    }
    std::vector<Bracket> out;
    for (std::size_t i = 1; i + 1 < ts.size(); ++i) {
        if (mag_sq[i] < opt.threshold_sq && mag_sq[i] <= mag_sq[i - 1] &&
            mag_sq[i] < mag_sq[i + 1])
            out.push_back({ts[i - 1], ts[i + 1]});
    }
    return out;
}

// Newton iteration on the complex-valued map t -> zeta(1/2 + it) with a
// numerical derivative, started from the bracket midpoint.
inline ZeroRecord refine_zero(const Bracket& bracket, const ZeroSearchOptions& opt = {}) {
    if (!(bracket.t_lo < bracket.t_hi)) throw domain_error("refine_zero: empty bracket");
    const double width = bracket.t_hi - bracket.t_lo;
    double t = 0.5 * (bracket.t_lo + bracket.t_hi);
    const double h = opt.fd_step;
    double residual = std::abs(detail::critical_line_value(t, opt));
    for (int iter = 0; iter < opt.max_newton_iters; ++iter) {
        const Complex f = detail::critical_line_value(t, opt);
        residual = std::abs(f);
        const Complex fp =
            (detail::critical_line_value(t + h, opt) - detail::critical_line_value(t - h, opt)) /
            (2.0 * h);
        if (std::abs(fp) == 0.0)
            throw refinement_error("refine_zero: vanishing derivative at t = " + std::to_string(t));
        const double delta = (f / fp).real();
        t -= delta;
        if (t < bracket.t_lo - width || t > bracket.t_hi + width)
            throw refinement_error("refine_zero: iteration left the bracket near t = " +
                                   std::to_string(t));
        if (std::abs(delta) < 1e-12 * std::max(1.0, std::abs(t))) {
            residual = std::abs(detail::critical_line_value(t, opt));
            break;
        }
    }
    if (!(residual <= 1e-8))
        throw refinement_error("refine_zero: residual " + std::to_string(residual) +
                               " above 1e-8 after Newton iterations near t = " + std::to_string(t) +
                               " (likely a false candidate bracket)");
    return {t, residual, bracket};
}

// The first n nontrivial-zero ordinates (n <= 20; covered window t <= 80.5).
inline std::vector<ZeroRecord> first_n_zeros(int n, const ZeroSearchOptions& opt = {}) {
    if (n < 1 || n > 20) throw domain_error("first_n_zeros: supported range is 1..20");
    const auto brackets = scan_critical_line(2.0, 80.5, 0.05, opt);
    std::vector<ZeroRecord> zeros;
    zeros.reserve(brackets.size());
    for (const auto& b : brackets) zeros.push_back(refine_zero(b, opt));
    std::sort(zeros.begin(), zeros.end(),
              [](const ZeroRecord& a, const ZeroRecord& b) { return a.t < b.t; });
    if (static_cast<int>(zeros.size()) < n)
        throw refinement_error("first_n_zeros: scan found only " + std::to_string(zeros.size()) +
                               " zeros in the covered window");
    zeros.resize(static_cast<std::size_t>(n));
    return zeros;
}

// CSV lines "index,t,residual"; fixed formats keep reruns byte-identical.
inline void write_zero_csv(std::ostream& os, const std::vector<ZeroRecord>& zeros) {
    os << "index,t,residual\n";
    char line[96];
    for (std::size_t i = 0; i < zeros.size(); ++i) {
        std::snprintf(line, sizeof(line), "%zu,%.6f,%.3e\n", i + 1, zeros[i].t, zeros[i].residual);
        os << line;
    }
}

} // namespace pntlab
