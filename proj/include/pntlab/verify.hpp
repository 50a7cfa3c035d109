#pragma once
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pntlab/asymptotics.hpp"
#include "pntlab/parallel.hpp"
#include "pntlab/primes.hpp"
#include "pntlab/tauberian.hpp"
#include "pntlab/zeros.hpp"
#include "pntlab/zeta.hpp"

namespace pntlab {

// One verification criterion: a named pass/fail with a detail line.
struct CriterionResult {
    int index = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

struct VerifyOptions {
    // Largest comparison-table row to reproduce (rows above 1e9 ride the
    // sublinear counter; all ten decades are on by default).
    std::uint64_t table_max = 1'000'000'000'000ull;
    unsigned threads = 0;
    std::uint64_t rng_seed = 0x5eeded2026ull;
};

namespace detail {

struct Stopwatch {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double elapsed() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

// the published ten-decade comparison table
struct ReferenceRow {
    std::uint64_t x, pi;
    long long li, xlog;
};

inline const std::vector<ReferenceRow>& reference_table() {
    static const std::vector<ReferenceRow> rows = {
        {1000ull, 168ull, 177ll, 145ll},
        {10000ull, 1229ull, 1245ll, 1086ll},
        {100000ull, 9592ull, 9629ll, 8686ll},
        {1000000ull, 78498ull, 78627ll, 72382ll},
        {10000000ull, 664579ull, 664917ll, 620421ll},
        {100000000ull, 5761455ull, 5762208ll, 5428681ll},
        {1000000000ull, 50847534ull, 50849234ll, 48254942ll},
        {10000000000ull, 455052511ull, 455055614ll, 434294482ll},
        {100000000000ull, 4118054813ull, 4118066400ll, 3948131654ll},
        {1000000000000ull, 37607912018ull, 37607950280ll, 36191206825ll},
    };
    return rows;
}

inline const double* zero_ordinates_4dp() {
    static const double zs[20] = {14.1347, 21.0220, 25.0109, 30.4249, 32.9351,
                                  37.5862, 40.9187, 43.3271, 48.0052, 49.7738,
                                  52.9703, 56.4462, 59.3470, 60.8318, 65.1125,
                                  67.0798, 69.5464, 72.0672, 75.7047, 77.1448};
    return zs;
}

inline std::string fmt(double v) {
    std::ostringstream ss;
    ss.precision(6);
    ss << v;
    return ss.str();
}

} // namespace detail

inline CriterionResult verify_table(const VerifyOptions& opt) {
    detail::Stopwatch clock;
    CriterionResult res{1, "Table reproduction: pi(x), round Li(x), round x/log x", false, "", 0.0};
    std::ostringstream detail_line;
    bool ok = true;
    double through_1e9 = 0.0;
    for (const auto& ref : detail::reference_table()) {
        if (ref.x > opt.table_max) break;
        const auto row = table_row(ref.x);
        if (row.pi != ref.pi || row.li_rounded != ref.li || row.x_over_logx_rounded != ref.xlog) {
            ok = false;
            detail_line << " mismatch at x=" << ref.x << " got (" << row.pi << ","
                        << row.li_rounded << "," << row.x_over_logx_rounded << ");";
        }
        if (ref.x == 1000000000ull) through_1e9 = clock.elapsed();
    }
    res.seconds = clock.elapsed();
    if (through_1e9 > 60.0) {
        ok = false;
        detail_line << " rows through 1e9 took " << detail::fmt(through_1e9) << "s (budget 60s);";
    }
    if (opt.table_max >= 1'000'000'000'000ull && res.seconds > 1800.0) {
        ok = false;
        detail_line << " full table took " << detail::fmt(res.seconds) << "s (budget 1800s);";
    }
    res.pass = ok;
    res.detail = ok ? "all rows match (through 1e9 in " + detail::fmt(through_1e9) + "s)"
                    : detail_line.str();
    return res;
}

inline CriterionResult verify_zeros(const VerifyOptions&) {
    detail::Stopwatch clock;
    CriterionResult res{2, "First 20 critical-line zeros to 4 decimals, residuals <= 1e-8", false,
                        "", 0.0};
    const double* ref = detail::zero_ordinates_4dp();
    std::ostringstream bad;
    bool ok = true;
    try {
        const auto zeros = first_n_zeros(20);
        double worst_gap = 0.0, worst_residual = 0.0;
        for (int i = 0; i < 20; ++i) {
            const double gap = std::abs(zeros[i].t - ref[i]);
            worst_gap = std::max(worst_gap, gap);
            worst_residual = std::max(worst_residual, zeros[i].residual);
            if (gap > 5e-5 || zeros[i].residual > 1e-8) {
                ok = false;
                bad << " zero #" << i + 1 << " t=" << zeros[i].t << ";";
            }
        }
        res.seconds = clock.elapsed();
        if (res.seconds > 60.0) {
            ok = false;
            bad << " runtime " << detail::fmt(res.seconds) << "s over the 60s budget;";
        }
        res.pass = ok;
        res.detail = ok ? "max |t - published| = " + detail::fmt(worst_gap) +
                              ", max residual = " + detail::fmt(worst_residual) + ", " +
                              detail::fmt(res.seconds) + "s"
                        : bad.str();
    } catch (const error& e) {
        res.seconds = clock.elapsed();
        res.detail = e.what();
    }
    return res;
}

inline CriterionResult verify_zeta2_three_ways(const VerifyOptions& opt) {
    detail::Stopwatch clock;
    CriterionResult res{3, "zeta(2) = pi^2/6 to 1e-10 three ways; pairwise strip agreement",
                        false, "", 0.0};
    const double target = M_PI * M_PI / 6.0;
    ZetaOptions zopt;
    zopt.threads = opt.threads;
    const auto direct = zeta_direct(2.0, 1e-10, zopt);
    const auto floor_val = zeta_floor_integral(2.0, 1e-11, zopt);
    const auto eta = zeta_eta_oracle(2.0, 1e-12, zopt);
    const double gd = std::abs(direct.value - target);
    const double gf = std::abs(floor_val.value - target);
    const double ge = std::abs(eta.value - target);
    bool ok = gd <= 1e-10 && gf <= 1e-10 && ge <= 1e-10;
    std::ostringstream info;
    info << "gaps: direct " << detail::fmt(gd) << ", floor " << detail::fmt(gf) << ", eta "
         << detail::fmt(ge);

    std::mt19937_64 rng(opt.rng_seed);
    std::uniform_real_distribution<double> re_hi(1.05, 3.0), re_lo(0.1, 1.0), im(-30.0, 30.0);
    int fail_pairs = 0;
    for (int k = 0; k < 100; ++k) {
        const Complex s(re_hi(rng), im(rng));
        const double td =
            std::max(1e-9, 1.05 * std::pow(2.0e6, 1.0 - s.real()) / (s.real() - 1.0));
        const double tf = std::max(
            1e-9, 2.1 * std::abs(s) / (s.real() * std::pow(65536.0, s.real())));
        const auto a = zeta_direct(s, td, zopt);
        const auto b = zeta_floor_integral(s, tf, zopt);
        if (std::abs(a.value - b.value) > a.err + b.err) ++fail_pairs;
    }
    for (int k = 0; k < 100; ++k) {
        Complex s(re_lo(rng), im(rng));
        if (std::abs(s - Complex(1.0, 0.0)) < 1e-3) s += Complex(0.0, 0.5);
        const double tf = std::max(
            1e-9, 2.1 * std::abs(s) / (s.real() * std::pow(65536.0, s.real())));
        const auto a = zeta_floor_integral(s, tf, zopt);
        const auto b = zeta_eta_oracle(s, 1e-11, zopt);
        if (std::abs(a.value - b.value) > a.err + b.err) ++fail_pairs;
    }
    if (fail_pairs) {
        ok = false;
        info << "; " << fail_pairs << " of 200 random pairs broke their combined bounds";
    } else {
        info << "; 200/200 random pairs inside combined bounds";
    }
    res.pass = ok;
    res.detail = info.str();
    res.seconds = clock.elapsed();
    return res;
}

inline CriterionResult verify_residue(const VerifyOptions& opt) {
    detail::Stopwatch clock;
    CriterionResult res{4, "(s-1) zeta(s) -> 1 along s = 1 + 10^-k with error < 10^{-k+1}", false,
                        "", 0.0};
    ZetaOptions zopt;
    zopt.threads = opt.threads;
    bool ok = true;
    std::ostringstream info;
    for (int k = 1; k <= 6; ++k) {
        const double delta = std::pow(10.0, -k);
        const auto z = zeta_floor_integral(1.0 + delta, 1e-6, zopt);
        const double drift = std::abs(delta * z.value - 1.0);
        if (!(drift < std::pow(10.0, -k + 1))) {
            ok = false;
            info << " k=" << k << " error " << drift << ";";
        }
        if (k == 6) info << "k=6 error " << detail::fmt(drift) << " < 1e-5";
    }
    res.pass = ok;
    res.detail = info.str();
    res.seconds = clock.elapsed();
    return res;
}

struct SqueezeData {
    std::vector<PrimeGridSample> samples;  // pi and theta on the shared log grid
};

inline const SqueezeData& squeeze_pass() {
    static const SqueezeData data = [] {
        SqueezeData d;
        d.samples = prime_grid_pass(log_grid(1.0, 1e8, 10000));
        return d;
    }();
    return data;
}

inline CriterionResult verify_chebyshev(const VerifyOptions&) {
    detail::Stopwatch clock;
    CriterionResult res{5, "theta(x) <= 3x on the grid; doubling gaps <= 2n log 2; theta(1e8)/1e8",
                        false, "", 0.0};
    const auto& data = squeeze_pass();
    bool ok = true;
    std::ostringstream info;
    for (const auto& s : data.samples)
        if (!(s.theta <= 3.0 * s.x)) {
            ok = false;
            info << " theta(" << s.x << ") breaks 3x;";
        }
    const auto scan = theta_doubling_scan(1'000'000);
    if (!(scan.max_excess <= 0.0)) {
        ok = false;
        info << " doubling excess " << scan.max_excess << " at n=" << scan.argmax << ";";
    }
    const double ratio = data.samples.back().theta / data.samples.back().x;
    if (!(ratio >= 0.98 && ratio <= 1.02)) {
        ok = false;
        info << " theta(1e8)/1e8 = " << ratio << " outside [0.98, 1.02];";
    }
    // the doubling bound rests on 4 log 2 < 3
    if (!(4.0 * std::log(2.0) < 3.0)) {
        ok = false;
        info << " 4 log 2 >= 3?!;";
    }
    res.pass = ok;
    res.detail = ok ? "worst doubling excess " + detail::fmt(scan.max_excess) +
                          " (at n=" + std::to_string(scan.argmax) +
                          "), theta(1e8)/1e8 = " + detail::fmt(ratio)
                    : info.str();
    res.seconds = clock.elapsed();
    return res;
}

inline CriterionResult verify_three_four_one(const VerifyOptions& opt) {
    detail::Stopwatch clock;
    CriterionResult res{6, "3-4-1 suite: trig identity, grid nonnegativity, |zeta(1+it)| floor",
                        false, "", 0.0};
    bool ok = true;
    std::ostringstream info;

    std::mt19937_64 rng(opt.rng_seed ^ 0x341);
    std::uniform_real_distribution<double> ux(-1000.0, 1000.0);
    double worst_identity = 0.0;
    for (int k = 0; k < 1'000'000; ++k) {
        const double x = ux(rng);
        const double c = std::cos(x);
        worst_identity = std::max(
            worst_identity, std::abs(3.0 + 4.0 * c + std::cos(2.0 * x) - 2.0 * (1.0 + c) * (1.0 + c)));
    }
    if (worst_identity > 1e-12) {
        ok = false;
        info << " trig identity drift " << worst_identity << ";";
    }

    three_four_one(2.0, 0.0);  // build the prime-power cache once
    const double sigmas[] = {1.001, 1.01, 1.1};
    std::vector<double> grid_min(3, 1e300);
    for (int si = 0; si < 3; ++si) {
        std::vector<double> vals(501);
        parallel_for_blocks(vals.size(), opt.threads, [&](std::uint64_t i) {
            vals[i] = three_four_one(sigmas[si], 0.1 * static_cast<double>(i));
        });
        grid_min[si] = *std::min_element(vals.begin(), vals.end());
        if (!(grid_min[si] >= -1e-6)) {
            ok = false;
            info << " grid minimum " << grid_min[si] << " at sigma=" << sigmas[si] << ";";
        }
    }

    double scan_min = 1e300;
    std::vector<double> mags(1599);
    parallel_for_blocks(mags.size(), opt.threads, [&](std::uint64_t i) {
        const double t = 0.1 + 0.05 * static_cast<double>(i);
        mags[i] = std::abs(zeta_eta_oracle(Complex(1.0, t), 1e-10).value);
    });
    scan_min = *std::min_element(mags.begin(), mags.end());
    if (!(scan_min > 0.01)) {
        ok = false;
        info << " min |zeta(1+it)| = " << scan_min << " <= 0.01;";
    }

    res.pass = ok;
    res.detail = ok ? "identity drift " + detail::fmt(worst_identity) + ", grid minima " +
                          detail::fmt(grid_min[0]) + "/" + detail::fmt(grid_min[1]) + "/" +
                          detail::fmt(grid_min[2]) + ", min |zeta(1+it)| = " +
                          detail::fmt(scan_min)
                    : info.str();
    res.seconds = clock.elapsed();
    return res;
}

inline CriterionResult verify_laplace_identity(const VerifyOptions&) {
    detail::Stopwatch clock;
    CriterionResult res{7, "Phi(s)/s matches the finite Laplace transform within its tail bound",
                        false, "", 0.0};
    bool ok = true;
    std::ostringstream info;
    for (Complex s : {Complex(2.0, 0.0), Complex(3.0, 0.0), Complex(2.0, 5.0)}) {
        const auto check = phi_laplace_identity_residual(s, 1'000'000);
        info << " s=" << s.real() << (s.imag() ? "+" + detail::fmt(s.imag()) + "i" : "") << ": "
             << detail::fmt(check.residual) << " <= " << detail::fmt(check.bound) << ";";
        if (!(check.residual <= check.bound)) ok = false;
    }
    res.pass = ok;
    res.detail = info.str();
    res.seconds = clock.elapsed();
    return res;
}

inline CriterionResult verify_newman(const VerifyOptions& opt) {
    detail::Stopwatch clock;
    CriterionResult res{8, "Newman machinery: contour residuals, remainder bounds, circle factor",
                        false, "", 0.0};
    bool ok = true;
    std::ostringstream info;

    const auto exp_cat = exp_decay_signal(3.0);
    const auto cos_cat = cos_decay_signal(3.0, 1.5);
    double worst_contour = 0.0;
    for (double R : {1.0, 2.0})
        for (double frac : {0.25, 0.5})
            for (double T : {1.0, 5.0, 10.0}) {
                const ContourSpec spec{R, R * frac, 256};
                worst_contour = std::max({worst_contour,
                                          newman_contour_residual(exp_cat, spec, T),
                                          newman_contour_residual(cos_cat, spec, T)});
            }
    if (!(worst_contour <= 1e-6)) {
        ok = false;
        info << " contour residual " << worst_contour << ";";
    }

    std::mt19937_64 rng(opt.rng_seed ^ 0xca7);
    std::uniform_real_distribution<double> re_pos(0.05, 3.0), re_neg(-3.0, -0.05), im(-5.0, 5.0),
        tt(0.5, 15.0), lvl(-1.0, 1.0);
    int rz1_fail = 0, rz2_fail = 0;
    for (int k = 0; k < 100; ++k) {
        const Complex z(re_pos(rng), im(rng));
        if (!bound_rz1_check(k % 2 ? exp_cat : cos_cat, z, tt(rng))) ++rz1_fail;
    }
    for (int k = 0; k < 100; ++k) {
        const auto cat = step_signal(
            {0.7, 1.9, 3.1}, {Complex(lvl(rng), lvl(rng)), Complex(lvl(rng), 0.0),
                              Complex(lvl(rng), lvl(rng)), Complex(lvl(rng), 0.0)});
        if (!bound_rz2_check(cat, Complex(re_neg(rng), im(rng)), tt(rng))) ++rz2_fail;
    }
    if (rz1_fail || rz2_fail) {
        ok = false;
        info << " rz1 failures " << rz1_fail << ", rz2 failures " << rz2_fail << ";";
    }

    std::uniform_real_distribution<double> angle(-M_PI, M_PI);
    int circle_fail = 0;
    for (double R : {1.0, 5.0, 10.0})
        for (int k = 0; k < 1000; ++k)
            if (!circle_factor_check(R * cis(angle(rng)), R)) ++circle_fail;
    if (circle_fail) {
        ok = false;
        info << " circle-factor failures " << circle_fail << ";";
    }

    res.pass = ok;
    res.detail = ok ? "worst contour residual " + detail::fmt(worst_contour) +
                          ", 100+100 remainder bounds hold, 3000 circle points hold"
                    : info.str();
    res.seconds = clock.elapsed();
    return res;
}

inline CriterionResult verify_pnt_integral(const VerifyOptions&) {
    detail::Stopwatch clock;
    CriterionResult res{9, "PNT integral: |I(10^k)| envelope falls; two g(0) oracles agree", false,
                        "", 0.0};
    bool ok = true;
    std::ostringstream info;
    const auto series =
        pnt_integral_tail_series({1e2, 1e3, 1e4, 1e5, 1e6, 1e7, 1e8}, 100'000'000);
    std::vector<ConvergencePoint> pts;
    for (std::size_t i = 0; i < series.x.size(); ++i)
        pts.push_back({std::log10(series.x[i]), series.integral[i]});
    if (!envelope_decreasing(pts)) {
        ok = false;
        info << " envelope failed to fall;";
    }
    const double g0_tail = series.g0_estimate;
    const double g0_phi = theta_g0_from_phi();
    const double gap = std::abs(g0_tail - g0_phi);
    if (!(gap <= 1e-2)) {
        ok = false;
        info << " oracle gap " << gap << " > 1e-2;";
    }
    res.pass = ok;
    res.detail = ok ? "|I| from " + detail::fmt(std::abs(series.integral.front())) + " down to " +
                          detail::fmt(std::abs(series.integral.back())) + "; g(0) oracles " +
                          detail::fmt(g0_tail) + " vs " + detail::fmt(g0_phi) + " (gap " +
                          detail::fmt(gap) + ")"
                    : info.str();
    res.seconds = clock.elapsed();
    return res;
}

inline CriterionResult verify_squeeze(const VerifyOptions&) {
    detail::Stopwatch clock;
    CriterionResult res{10, "Squeeze suite: theta <= pi log x; ratio windows for pi and p_n",
                        false, "", 0.0};
    const auto& data = squeeze_pass();
    bool ok = true;
    std::ostringstream info;
    for (const auto& s : data.samples) {
        if (s.x < 2.0) continue;
        if (!(s.theta <= static_cast<double>(s.pi) * std::log(s.x) + 1e-9)) {
            ok = false;
            info << " theta > pi log x at x=" << s.x << ";";
        }
        if (s.x >= 1e5) {
            const double ratio = static_cast<double>(s.pi) * std::log(s.x) / s.x;
            if (!(ratio >= 0.9 && ratio <= 1.2)) {
                ok = false;
                info << " pi ratio " << ratio << " at x=" << s.x << ";";
            }
        }
    }
    // p_n / (n log n) over a log-spaced index grid in [1e5, 1e6]
    std::vector<std::uint64_t> n_grid;
    for (double n = 1e5; n <= 1.0000001e6; n *= 1.1)
        n_grid.push_back(static_cast<std::uint64_t>(n));
    n_grid.push_back(1'000'000);
    std::sort(n_grid.begin(), n_grid.end());
    n_grid.erase(std::unique(n_grid.begin(), n_grid.end()), n_grid.end());
    const auto pn = pn_ratio_series(n_grid);
    for (std::size_t i = 0; i < pn.ratios.size(); ++i)
        if (!(pn.ratios[i] >= 0.9 && pn.ratios[i] <= 1.2)) {
            ok = false;
            info << " p_n ratio " << pn.ratios[i] << " at n=" << pn.grid[i] << ";";
        }
    res.pass = ok;
    res.detail = ok ? "theta <= pi log x everywhere; ratio windows hold on " +
                          std::to_string(data.samples.size()) + " grid points and " +
                          std::to_string(pn.ratios.size()) + " indices"
                    : info.str();
    res.seconds = clock.elapsed();
    return res;
}

inline std::vector<CriterionResult> run_verification(const VerifyOptions& opt,
                                                     std::ostream* progress = nullptr) {
    std::vector<CriterionResult> out;
    const auto emit = [&](CriterionResult r) {
        if (progress)
            (*progress) << (r.pass ? "[PASS] " : "[FAIL] ") << r.index << ". " << r.name << " — "
                        << r.detail << " (" << detail::fmt(r.seconds) << "s)" << std::endl;
        out.push_back(std::move(r));
    };
    emit(verify_table(opt));
    emit(verify_zeros(opt));
    emit(verify_zeta2_three_ways(opt));
    emit(verify_residue(opt));
    emit(verify_chebyshev(opt));
    emit(verify_three_four_one(opt));
    emit(verify_laplace_identity(opt));
    emit(verify_newman(opt));
    emit(verify_pnt_integral(opt));
    emit(verify_squeeze(opt));
    return out;
}

inline bool all_passed(const std::vector<CriterionResult>& results) {
    for (const auto& r : results)
        if (!r.pass) return false;
    return !results.empty();
}

} // namespace pntlab
