#pragma once
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "pntlab/complex_ops.hpp"
#include "pntlab/errors.hpp"
#include "pntlab/parallel.hpp"
#include "pntlab/primes.hpp"
#include "pntlab/quadrature.hpp"
#include "pntlab/summation.hpp"

namespace pntlab {

enum class EvalMethod {
    direct_series,
    floor_integral,
    eta_series,
    euler_product,
    phi_series,
    phi_continued,
    log_series,
    log_abs_series,
    log_derivative,
};

inline const char* to_string(EvalMethod m) noexcept {
    switch (m) {
        case EvalMethod::direct_series: return "direct_series";
        case EvalMethod::floor_integral: return "floor_integral";
        case EvalMethod::eta_series: return "eta_series";
        case EvalMethod::euler_product: return "euler_product";
        case EvalMethod::phi_series: return "phi_series";
        case EvalMethod::phi_continued: return "phi_continued";
        case EvalMethod::log_series: return "log_series";
        case EvalMethod::log_abs_series: return "log_abs_series";
        case EvalMethod::log_derivative: return "log_derivative";
    }
    return "unknown";
}

// A computed complex value with an absolute error bound and the tag of
// the producing route.  Bounds are rigorous for the series truncations
// and heuristic (but test-calibrated) for quadrature rounding.
struct EvalResult {
    Complex value{};
    double err = 0.0;
    EvalMethod method = EvalMethod::direct_series;
};

struct ZetaOptions {
    double margin = 0.05;                  // guard band on Re-s preconditions
    std::uint64_t max_terms = 1ull << 34;  // direct-series term budget
    std::uint64_t max_intervals = 1u << 21;  // floor-integral interval cap
    std::uint64_t max_primes = 200'000'000;  // prime-sum truncation cap
    int gauss_order = 16;
    unsigned threads = 0;  // 0 = hardware concurrency
    SieveOptions sieve;
};

namespace detail {

constexpr double kEps = std::numeric_limits<double>::epsilon();

inline void require_positive_tol(double tol, const char* who) {
    if (!(tol > 0.0)) throw domain_error(std::string(who) + ": tol must be positive");
}

// Integral-test tail of sum_{n>N} n^{-sigma} for sigma > 1.
inline double dirichlet_tail(double n, double sigma) noexcept {
    return std::pow(n, 1.0 - sigma) / (sigma - 1.0);
}

struct BlockSum {
    Complex value{};
    double abs = 0.0;
    double err = 0.0;
};

} // namespace detail

// ---------------------------------------------------------------------
// zeta by the defining Dirichlet series (Re s > 1): partial sum to an N
// chosen so the integral-test tail meets tol, summed in fixed block
// order so parallel runs stay bit-reproducible.
// ---------------------------------------------------------------------
inline EvalResult zeta_direct(Complex s, double tol, const ZetaOptions& opt = {}) {
    const double sigma = s.real();
    if (!(sigma > 1.0))
        throw domain_error(
            "zeta_direct: the series diverges for Re s <= 1; use zeta_floor_integral for the continuation");
    detail::require_positive_tol(tol, "zeta_direct");

    // N from N^{1-sigma}/(sigma-1) <= tol, with 2% headroom
    const double ln_n = std::log(1.0 / (tol * (sigma - 1.0))) / (sigma - 1.0);
    if (ln_n > std::log(static_cast<double>(opt.max_terms)))
        throw resource_error(
            "zeta_direct: meeting tol at Re s = " + std::to_string(sigma) +
            " needs more than the term budget of " + std::to_string(opt.max_terms) +
            "; loosen tol or use the continuation");
    const std::uint64_t n_terms =
        std::max<std::uint64_t>(10, static_cast<std::uint64_t>(1.02 * std::exp(ln_n)) + 1);

    const bool real_s = s.imag() == 0.0;
    const bool int_s = real_s && sigma == std::floor(sigma) && sigma <= 8.0;
    const std::uint64_t block = int_s ? (1ull << 24) : (1ull << 20);
    const std::uint64_t n_blocks = (n_terms + block - 1) / block;
    std::vector<detail::BlockSum> parts(n_blocks);

    parallel_for_blocks(n_blocks, opt.threads, [&](std::uint64_t b) {
        const std::uint64_t lo = 1 + b * block;
        const std::uint64_t hi = std::min(n_terms, lo + block - 1);
        if (int_s) {
            const int k = static_cast<int>(sigma);
            CompensatedSum acc;
            for (std::uint64_t n = lo; n <= hi; ++n) {
                const double nd = static_cast<double>(n);
                double q = nd;
                for (int j = 1; j < k; ++j) q *= nd;
                acc.add(1.0 / q);
            }
            parts[b] = {Complex(acc.value(), 0.0), acc.abs_sum(), acc.error_bound()};
        } else if (real_s) {
            CompensatedSum acc;
            for (std::uint64_t n = lo; n <= hi; ++n)
                acc.add(std::exp(-sigma * std::log(static_cast<double>(n))));
            parts[b] = {Complex(acc.value(), 0.0), acc.abs_sum(), acc.error_bound()};
        } else {
            ComplexCompensatedSum acc;
            for (std::uint64_t n = lo; n <= hi; ++n)
                acc.add(inv_pow(static_cast<double>(n), s));
            parts[b] = {acc.value(), acc.abs_sum(), acc.error_bound()};
        }
    });

    ComplexCompensatedSum total;
    double abs_sum = 0.0, block_err = 0.0;
    for (const auto& p : parts) {
        total.add(p.value);
        abs_sum += p.abs;
        block_err += p.err;
    }
    const double tail = detail::dirichlet_tail(static_cast<double>(n_terms), sigma);
    // per-term power evaluations are good to ~2 ulp
    const double rounding = block_err + total.error_bound() + 2.0 * detail::kEps * abs_sum;
    return {total.value(), tail + rounding, EvalMethod::direct_series};
}

// ---------------------------------------------------------------------
// Continuation to Re s > 0 via the fractional-part integral:
//   zeta(s) = 1/(s-1) + 1 - s * J(s),  J(s) = int_1^inf (x-floor x) x^{-s-1} dx.
// J is integrated interval by interval, where the integrand is smooth;
// panels subdivide further when Im s makes the phase turn fast.
// ---------------------------------------------------------------------
namespace detail {

struct FloorIntegral {
    Complex j{};
    double abs = 0.0;
    double zeta_tail = 0.0;  // |s|/(sigma N^sigma), the zeta-level truncation bound
    double rounding = 0.0;
    std::uint64_t intervals = 0;
};

inline FloorIntegral floor_fractional_integral(Complex s, double tol, const ZetaOptions& opt) {
    const double sigma = s.real();
    const double t = s.imag();
    const double mod_s = std::abs(s);
    double ln_n = std::log(2.0 * mod_s / (sigma * tol)) / sigma;
    ln_n = std::min(ln_n, std::log(static_cast<double>(opt.max_intervals)));
    const std::uint64_t n_intervals =
        std::clamp<std::uint64_t>(static_cast<std::uint64_t>(std::exp(ln_n)) + 1, 16,
                                  opt.max_intervals);

    const GaussRule& rule = gauss_rule(opt.gauss_order);
    const bool real_s = t == 0.0;
    const Complex sp1 = s + 1.0;

    const std::uint64_t block = 1ull << 15;
    const std::uint64_t n_blocks = (n_intervals + block - 1) / block;
    std::vector<BlockSum> parts(n_blocks);

    parallel_for_blocks(n_blocks, opt.threads, [&](std::uint64_t b) {
        const std::uint64_t lo = 1 + b * block;
        const std::uint64_t hi = std::min(n_intervals, lo + block - 1);
        ComplexCompensatedSum acc;
        for (std::uint64_t n = lo; n <= hi; ++n) {
            const double nd = static_cast<double>(n);
            // keep the phase swing per panel below ~4 radians
            const double phase = std::abs(t) * std::log1p(1.0 / nd);
            const int panels = 1 + static_cast<int>(phase / 4.0);
            const double width = 1.0 / panels;
            for (int p = 0; p < panels; ++p) {
                const double a = nd + p * width;
                const double mid = a + width / 2.0, half = width / 2.0;
                if (real_s) {
                    double piece = 0.0;
                    for (int i = 0; i < opt.gauss_order; ++i) {
                        const double x = mid + half * rule.nodes[i];
                        piece += rule.weights[i] * (x - nd) * std::exp(-sp1.real() * std::log(x));
                    }
                    acc.add(Complex(half * piece, 0.0));
                } else {
                    Complex piece{};
                    for (int i = 0; i < opt.gauss_order; ++i) {
                        const double x = mid + half * rule.nodes[i];
                        piece += rule.weights[i] * (x - nd) * inv_pow(x, sp1);
                    }
                    acc.add(half * piece);
                }
            }
        }
        parts[b] = {acc.value(), acc.abs_sum(), acc.error_bound()};
    });

    FloorIntegral out;
    ComplexCompensatedSum total;
    double block_err = 0.0;
    for (const auto& p : parts) {
        total.add(p.value);
        out.abs += p.abs;
        block_err += p.err;
    }
    out.j = total.value();
    out.intervals = n_intervals;
    out.zeta_tail = mod_s * std::exp(-sigma * std::log(static_cast<double>(n_intervals))) / sigma;
    out.rounding = block_err + total.error_bound() +
                   2.0 * opt.gauss_order * kEps * out.abs;
    return out;
}

} // namespace detail

inline EvalResult zeta_floor_integral(Complex s, double tol, const ZetaOptions& opt = {}) {
    if (!(s.real() > 0.0))
        throw domain_error("zeta_floor_integral: the continuation covers Re s > 0 only");
    if (std::abs(s - Complex(1.0, 0.0)) < 1e-12)
        throw pole_error("zeta_floor_integral: zeta has its simple pole at s = 1");
    detail::require_positive_tol(tol, "zeta_floor_integral");

    const auto J = detail::floor_fractional_integral(s, tol, opt);
    const Complex pole = 1.0 / (s - 1.0);
    const Complex value = pole + 1.0 - s * J.j;
    const double rounding =
        std::abs(s) * J.rounding +
        4.0 * detail::kEps * (std::abs(pole) + 1.0 + std::abs(s) * J.abs);
    return {value, J.zeta_tail + rounding, EvalMethod::floor_integral};
}

// ---------------------------------------------------------------------
// Independent continuation oracle: the alternating (eta) series with
// Chebyshev acceleration, divided by 1 - 2^{1-s}.
// ---------------------------------------------------------------------
inline EvalResult zeta_eta_oracle(Complex s, double tol, const ZetaOptions& opt = {}) {
    (void)opt;
    if (!(s.real() > 0.0))
        throw domain_error("zeta_eta_oracle: the eta quotient is used on Re s > 0 only");
    detail::require_positive_tol(tol, "zeta_eta_oracle");
    const Complex denom = -cexpm1((1.0 - s) * std::log(2.0));  // 1 - 2^{1-s}
    const double denom_mag = std::abs(denom);
    if (denom_mag < 1e-8)
        throw domain_error(
            "zeta_eta_oracle: s sits on a zero of 1 - 2^{1-s} (s = 1 + 2 pi i k / log 2); "
            "the eta quotient is singular there");

    const double t = std::abs(s.imag());
    const double want_digits = -std::log(std::min(tol, 0.1));
    const double accel = std::log(3.0 + std::sqrt(8.0));
    const int n = std::clamp(
        static_cast<int>(std::ceil((M_PI * t / 2.0 + want_digits + 16.0) / accel)), 24, 340);

    double d = std::pow(3.0 + 2.0 * std::sqrt(2.0), n);
    d = (d + 1.0 / d) / 2.0;
    double b = -1.0, c = -d;
    Complex sum{};
    for (int k = 0; k < n; ++k) {
        c = b - c;
        sum += c * inv_pow(static_cast<double>(k + 1), s);
        b *= 2.0 * (k + n) * (k - n) / ((2.0 * k + 1.0) * (k + 1.0));
    }
    const Complex eta = sum / d;
    const Complex value = eta / denom;

    // acceleration residue amplified by ~e^{pi t/2} for off-axis s, plus
    // rounding from the size-d coefficients; calibrated against frozen oracles
    const double accel_err = 20.0 * std::exp(M_PI * t / 2.0 - accel * n);
    const double rounding = 8.0 * detail::kEps * (n + std::abs(value) + 1.0);
    return {value, (accel_err + rounding) / denom_mag, EvalMethod::eta_series};
}

// ---------------------------------------------------------------------
// Euler product machinery.
// ---------------------------------------------------------------------
inline EvalResult euler_product_partial(Complex s, std::uint64_t n_limit,
                                        const ZetaOptions& opt = {}) {
    if (!(s.real() > 1.0))
        throw domain_error("euler_product_partial: the product converges for Re s > 1 only");
    if (n_limit < 2) throw domain_error("euler_product_partial: need N >= 2");
    Complex prod = 1.0;
    std::uint64_t factors = 0;
    for_each_prime(
        n_limit,
        [&](std::uint64_t p) {
            prod /= 1.0 - inv_pow(static_cast<double>(p), s);
            ++factors;
        },
        opt.sieve);
    const double tail = detail::dirichlet_tail(static_cast<double>(n_limit), s.real());
    const double rounding = 6.0 * detail::kEps * static_cast<double>(factors) * std::abs(prod);
    return {prod, tail + rounding, EvalMethod::euler_product};
}

// |zeta(s) * prod_{p<=N} (1 - p^{-s}) - 1|, which must shrink as N grows.
inline double reciprocal_product_check(Complex s, std::uint64_t n_limit,
                                       const ZetaOptions& opt = {}) {
    if (!(s.real() > 1.0))
        throw domain_error("reciprocal_product_check: needs Re s > 1");
    const double sigma = s.real();
    const double reachable = 1.05 * detail::dirichlet_tail(1e8, sigma);
    const auto z = zeta_direct(s, std::max(1e-12, reachable), opt);
    Complex prod = 1.0;
    for_each_prime(
        n_limit, [&](std::uint64_t p) { prod *= 1.0 - inv_pow(static_cast<double>(p), s); },
        opt.sieve);
    return std::abs(z.value * prod - 1.0);
}

// sum of 1/p over p <= n_limit (Euler's divergence witness).
inline double prime_harmonic_sum(std::uint64_t n_limit, const SieveOptions& opt = {}) {
    CompensatedSum acc;
    for_each_prime(n_limit, [&](std::uint64_t p) { acc.add(1.0 / static_cast<double>(p)); }, opt);
    return acc.value();
}

// ---------------------------------------------------------------------
// log zeta as the prime-power Dirichlet series with coefficients
// c_n = 1/k when n = p^k and 0 otherwise.  The branch is fixed by the
// per-factor principal logs, never by Log(zeta(s)).
// ---------------------------------------------------------------------
struct LogCoefficient {
    std::uint64_t n = 0;
    std::uint64_t num = 0;  // exact rational num/den; 0/1 when n is no prime power
    std::uint64_t den = 1;
};

inline std::vector<LogCoefficient> log_coefficients(std::uint64_t limit) {
    if (limit < 1) throw domain_error("log_coefficients: limit must be >= 1");
    if (limit > 100'000'000)
        throw resource_error("log_coefficients: limit beyond the 1e8 table budget");
    const auto n_max = static_cast<std::size_t>(limit);
    std::vector<std::uint32_t> spf(n_max + 1, 0);
    for (std::size_t i = 2; i <= n_max; ++i) {
        if (spf[i] != 0) continue;
        for (std::size_t j = i; j <= n_max; j += i)
            if (spf[j] == 0) spf[j] = static_cast<std::uint32_t>(i);
    }
    std::vector<LogCoefficient> out(n_max);
    for (std::size_t n = 1; n <= n_max; ++n) {
        LogCoefficient c{n, 0, 1};
        if (n >= 2) {
            const std::uint64_t p = spf[n];
            std::uint64_t m = n, k = 0;
            while (m % p == 0) {
                m /= p;
                ++k;
            }
            if (m == 1) c = {n, 1, k};
        }
        out[n - 1] = c;
    }
    return out;
}

namespace detail {

// Truncation point for prime-indexed sums bounded via 2*sum_{n>P} n^{-sigma}.
inline std::uint64_t log_series_cutoff(double sigma, double tol, const ZetaOptions& opt) {
    double ln_p = std::log(4.0 / ((sigma - 1.0) * tol)) / (sigma - 1.0);
    ln_p = std::min(ln_p, std::log(static_cast<double>(opt.max_primes)));
    return std::clamp<std::uint64_t>(static_cast<std::uint64_t>(std::exp(ln_p)) + 1, 64,
                                     opt.max_primes);
}

} // namespace detail

inline EvalResult log_zeta_series(Complex s, double tol, const ZetaOptions& opt = {}) {
    const double sigma = s.real();
    if (!(sigma > 1.0)) throw domain_error("log_zeta_series: needs Re s > 1");
    detail::require_positive_tol(tol, "log_zeta_series");
    const std::uint64_t cutoff = detail::log_series_cutoff(sigma, tol, opt);
    ComplexCompensatedSum acc;
    CompensatedSum leftover;  // per-prime geometric remainders past the cutoff
    const double cut = static_cast<double>(cutoff);
    for_each_prime(
        cutoff,
        [&](std::uint64_t p) {
            const double pd = static_cast<double>(p);
            const Complex w = inv_pow(pd, s);
            const double w_mag = std::exp(-sigma * std::log(pd));
            Complex z = w;
            double pk = pd;
            std::uint64_t k = 1;
            while (true) {
                acc.add(z / static_cast<double>(k));
                pk *= pd;
                if (pk > cut) break;
                z *= w;
                ++k;
            }
            // powers beyond the cutoff: geometric bound
            const double wk = std::exp(-sigma * static_cast<double>(k + 1) * std::log(pd));
            leftover.add(wk / (static_cast<double>(k + 1) * (1.0 - w_mag)));
        },
        opt.sieve);
    const double prime_tail = 2.0 * detail::dirichlet_tail(cut, sigma);
    const double err = prime_tail + leftover.value() + acc.error_bound() +
                       4.0 * detail::kEps * acc.abs_sum();
    return {acc.value(), err, EvalMethod::log_series};
}

// log |zeta(sigma + it)| = sum c_n cos(t log n) / n^sigma.
inline double log_abs_zeta(double sigma, double t, double tol, const ZetaOptions& opt = {}) {
    if (!(sigma > 1.0)) throw domain_error("log_abs_zeta: needs sigma > 1");
    detail::require_positive_tol(tol, "log_abs_zeta");
    const std::uint64_t cutoff = detail::log_series_cutoff(sigma, tol, opt);
    CompensatedSum acc;
    const double cut = static_cast<double>(cutoff);
    for_each_prime(
        cutoff,
        [&](std::uint64_t p) {
            const double lp = std::log(static_cast<double>(p));
            double pk = static_cast<double>(p);
            std::uint64_t k = 1;
            while (true) {
                acc.add(std::cos(t * static_cast<double>(k) * lp) *
                        std::exp(-sigma * static_cast<double>(k) * lp) / static_cast<double>(k));
                pk *= static_cast<double>(p);
                if (pk > cut) break;
                ++k;
            }
        },
        opt.sieve);
    return acc.value();
}

// 3 log|zeta(sigma)| + 4 log|zeta(sigma+it)| + log|zeta(sigma+2it)| with a
// common truncation, so every term carries the weight
//   3 + 4 cos x + cos 2x = 2 (1 + cos x)^2 >= 0
// and the computed sum is nonnegative regardless of where it stops.
inline double three_four_one(double sigma, double t, std::uint64_t cutoff = 1'000'000) {
    if (!(sigma > 1.0)) throw domain_error("three_four_one: needs sigma > 1");
    struct Term {
        double log_n;
        double coeff;  // c_n = 1/k
    };
    using TermTable = std::vector<Term>;
    static std::mutex mu;
    static std::shared_ptr<const TermTable> cache;
    static std::uint64_t cache_limit = 0;
    std::shared_ptr<const TermTable> terms;
    {
        std::scoped_lock lock(mu);
        if (cache_limit < cutoff) {
            auto fresh = std::make_shared<TermTable>();
            for_each_prime(cutoff, [&](std::uint64_t p) {
                const double lp = std::log(static_cast<double>(p));
                double pk = static_cast<double>(p);
                std::uint64_t k = 1;
                while (pk <= static_cast<double>(cutoff)) {
                    fresh->push_back({static_cast<double>(k) * lp, 1.0 / static_cast<double>(k)});
                    pk *= static_cast<double>(p);
                    ++k;
                }
            });
            cache = std::move(fresh);
            cache_limit = cutoff;
        }
        terms = cache;
    }
    double sum = 0.0;
    for (const Term& term : *terms) {
        const double c = std::cos(t * term.log_n);
        const double one_plus = 1.0 + c;
        sum += term.coeff * std::exp(-sigma * term.log_n) * 2.0 * one_plus * one_plus;
    }
    return sum;
}

// |Log(1/(1-z))| <= 2 |z| for |z| < 1/2.
inline bool log_tail_bound_check(Complex z) {
    const double mag = std::abs(z);
    if (!(mag < 0.5)) throw domain_error("log_tail_bound_check: requires |z| < 1/2");
    return std::abs(-std::log(1.0 - z)) <= 2.0 * mag;
}

// ---------------------------------------------------------------------
// Phi(s) = sum_p log p / p^s and its continuation past Re s = 1.
// ---------------------------------------------------------------------
namespace detail {

// integral-test tail of sum_{n>P} log n * n^{-sigma}
inline double log_weighted_tail(double p, double sigma) noexcept {
    const double s1 = sigma - 1.0;
    return std::exp((1.0 - sigma) * std::log(p)) * (std::log(p) / s1 + 1.0 / (s1 * s1));
}

inline std::uint64_t phi_cutoff(double sigma, double tol, const ZetaOptions& opt) {
    std::uint64_t p = 1024;
    while (p < opt.max_primes && log_weighted_tail(static_cast<double>(p), sigma) > tol)
        p *= 2;
    return std::min(p, opt.max_primes);
}

} // namespace detail

inline EvalResult phi_series(Complex s, double tol, const ZetaOptions& opt = {}) {
    const double sigma = s.real();
    if (!(sigma > 1.0)) throw domain_error("phi_series: needs Re s > 1");
    detail::require_positive_tol(tol, "phi_series");
    const std::uint64_t cutoff = detail::phi_cutoff(sigma, tol / 2.0, opt);
    ComplexCompensatedSum acc;
    for_each_prime(
        cutoff,
        [&](std::uint64_t p) {
            const double pd = static_cast<double>(p);
            acc.add(std::log(pd) * inv_pow(pd, s));
        },
        opt.sieve);
    const double tail = detail::log_weighted_tail(static_cast<double>(cutoff), sigma);
    return {acc.value(), tail + acc.error_bound() + 4.0 * detail::kEps * acc.abs_sum(),
            EvalMethod::phi_series};
}

// -zeta'/zeta as the prime sum  sum_p log p / (p^s - 1)  (Re s > 1).
inline EvalResult zeta_log_derivative(Complex s, double tol, const ZetaOptions& opt = {}) {
    const double sigma = s.real();
    if (!(sigma > 1.0)) throw domain_error("zeta_log_derivative: needs Re s > 1");
    detail::require_positive_tol(tol, "zeta_log_derivative");
    // terms log p/(p^s - 1) <= 2 log p p^{-sigma}
    const std::uint64_t cutoff = detail::phi_cutoff(sigma, tol / 4.0, opt);
    ComplexCompensatedSum acc;
    for_each_prime(
        cutoff,
        [&](std::uint64_t p) {
            const double pd = static_cast<double>(p);
            const Complex w = inv_pow(pd, s);
            acc.add(std::log(pd) * w / (1.0 - w));
        },
        opt.sieve);
    const double tail = 2.0 * detail::log_weighted_tail(static_cast<double>(cutoff), sigma);
    return {acc.value(), tail + acc.error_bound() + 6.0 * detail::kEps * acc.abs_sum(),
            EvalMethod::log_derivative};
}

// Continuation of Phi to Re s > 1/2 (s != 1, away from zeta zeros):
//   Phi(s) = -zeta'/zeta - sum_p log p/(p^s (p^s - 1))
// with -zeta'/zeta evaluated through the pole-subtracted part of the
// floor-integral continuation, W(s) = zeta(s) - 1/(s-1) = 1 - s J(s):
//   -zeta'/zeta = 1/(s-1) - ((s-1) W' + W) / (1 + (s-1) W).
// W is analytic across s = 1, so the Richardson stencil for W' never
// sees the pole.
inline EvalResult phi_continued(Complex s, double tol,
                                std::span<const double> zero_ordinates = {},
                                const ZetaOptions& opt = {}) {
    const double sigma = s.real();
    if (!(sigma > 0.5 + opt.margin))
        throw domain_error("phi_continued: needs Re s > 1/2 + margin");
    if (std::abs(s - Complex(1.0, 0.0)) < 1e-12)
        throw pole_error("phi_continued: Phi has its simple pole at s = 1");
    detail::require_positive_tol(tol, "phi_continued");
    for (double t0 : zero_ordinates) {
        if (std::abs(s - Complex(0.5, t0)) < 1e-3 || std::abs(s - Complex(0.5, -t0)) < 1e-3)
            throw domain_error(
                "phi_continued: s lies within the guard radius 1e-3 of the zeta zero at "
                "1/2 + " + std::to_string(t0) + "i, where -zeta'/zeta has a pole");
    }

    const double h = 1e-3;  // Richardson pair h, h/2
    const double dist1 = std::max(std::abs(s - Complex(1.0, 0.0)), h);
    const double tol_w = std::clamp(tol * h / (12.0 * dist1), 1e-10, 1e-5);

    const auto W = [&](Complex u) {
        const auto J = detail::floor_fractional_integral(u, tol_w, opt);
        const double err = J.zeta_tail + std::abs(u) * J.rounding;
        return std::pair<Complex, double>(1.0 - u * J.j, err);
    };

    const auto [w0, e0] = W(s);
    const auto [wp, ep] = W(s + h);
    const auto [wm, em] = W(s - h);
    const auto [wp2, ep2] = W(s + h / 2.0);
    const auto [wm2, em2] = W(s - h / 2.0);
    const Complex d1 = (wp - wm) / (2.0 * h);
    const Complex d2 = (wp2 - wm2) / h;
    const Complex w_prime = (4.0 * d2 - d1) / 3.0;
    const double w_err = std::max({e0, ep, em, ep2, em2});
    const double fd_err = std::abs(d2 - d1) / 3.0 + 3.0 * w_err / h;

    const Complex sm1 = s - 1.0;
    const Complex den = 1.0 + sm1 * w0;  // = (s-1) zeta(s)
    if (std::abs(den) < 1e-6)
        throw domain_error("phi_continued: (s-1) zeta(s) vanishes here (zeta zero)");
    const Complex b = -(sm1 * w_prime + w0) / den;
    const double b_err =
        (std::abs(sm1) * fd_err + w_err * (1.0 + std::abs(b) * std::abs(sm1))) / std::abs(den);

    // prime correction sum, convergent for Re s > 1/2
    const double sigma2 = 2.0 * sigma;
    std::uint64_t cutoff = 1024;
    while (cutoff < opt.max_primes &&
           2.0 * detail::log_weighted_tail(static_cast<double>(cutoff), sigma2) > tol / 2.0)
        cutoff *= 2;
    cutoff = std::min(cutoff, opt.max_primes);
    ComplexCompensatedSum corr;
    for_each_prime(
        cutoff,
        [&](std::uint64_t p) {
            const double pd = static_cast<double>(p);
            const Complex w = inv_pow(pd, s);
            corr.add(std::log(pd) * w * w / (1.0 - w));
        },
        opt.sieve);
    const double corr_tail = 2.0 * detail::log_weighted_tail(static_cast<double>(cutoff), sigma2);

    const Complex value = 1.0 / sm1 + b - corr.value();
    const double err = b_err + corr_tail + corr.error_bound() +
                       4.0 * detail::kEps * (std::abs(value) + 1.0);
    return {value, err, EvalMethod::phi_continued};
}

} // namespace pntlab
