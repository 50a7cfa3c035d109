#pragma once
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "pntlab/complex_ops.hpp"
#include "pntlab/errors.hpp"
#include "pntlab/primes.hpp"
#include "pntlab/quadrature.hpp"
#include "pntlab/summation.hpp"
#include "pntlab/zeta.hpp"

namespace pntlab {

// ---------------------------------------------------------------------
// theta(e^t) as an exact step function: breakpoints at log p.
// ---------------------------------------------------------------------
struct ThetaStep {
    std::vector<double> breakpoints;  // log p, strictly increasing
    std::vector<double> cumulative;   // theta right after each breakpoint
    double cutoff = 0.0;              // largest x the table covers

    // theta(e^t), exact for e^t <= cutoff
    double theta_at_exp(double t) const {
        if (std::exp(t) > cutoff * (1.0 + 1e-12))
            throw coverage_error("ThetaStep: e^t exceeds the covered cutoff " +
                                 std::to_string(cutoff));
        const auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), t);
        if (it == breakpoints.begin()) return 0.0;
        return cumulative[static_cast<std::size_t>(it - breakpoints.begin()) - 1];
    }
};

inline ThetaStep build_theta_step(std::uint64_t cutoff, const SieveOptions& opt = {}) {
    ThetaStep step;
    step.cutoff = static_cast<double>(cutoff);
    CompensatedSum acc;
    for_each_prime(
        cutoff,
        [&](std::uint64_t p) {
            acc.add(std::log(static_cast<double>(p)));
            step.breakpoints.push_back(std::log(static_cast<double>(p)));
            step.cumulative.push_back(acc.value());
        },
        opt);
    return step;
}

// ---------------------------------------------------------------------
// Finite Laplace transform of the step, in closed form per constancy
// interval: no quadrature error, only rounding.
// ---------------------------------------------------------------------
inline Complex laplace_exact_step(const ThetaStep& step, Complex s, double T) {
    if (std::exp(T) > step.cutoff * (1.0 + 1e-12))
        throw coverage_error("laplace_exact_step: e^T exceeds the covered cutoff");
    ComplexCompensatedSum acc;
    const std::size_t n = step.breakpoints.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double a = step.breakpoints[i];
        if (a >= T) break;
        const double b = std::min(i + 1 < n ? step.breakpoints[i + 1] : T, T);
        if (b <= a) continue;
        const double c = step.cumulative[i];
        if (s == Complex(0.0, 0.0)) {
            acc.add(Complex(c * (b - a), 0.0));
        } else {
            // c * (e^{-sa} - e^{-sb})/s, written to stay stable for small |s|(b-a)
            const Complex w = s * (b - a);
            acc.add(c * (b - a) * std::exp(-s * a) * phi1(w));
        }
    }
    return acc.value();
}

// ---------------------------------------------------------------------
// Identity Phi(s)/s = int_0^inf theta(e^t) e^{-st} dt, checked at a
// finite horizon with the Chebyshev bound theta(x) <= 3x supplying the
// truncation allowance.
// ---------------------------------------------------------------------
struct LaplaceIdentityCheck {
    double residual = 0.0;  // |Phi(s)/s - finite-horizon transform|
    double bound = 0.0;     // truncation allowance the residual must respect
};

inline LaplaceIdentityCheck phi_laplace_identity_residual(Complex s, std::uint64_t cutoff,
                                                          const ZetaOptions& opt = {}) {
    const double sigma = s.real();
    if (!(sigma > 1.0)) throw domain_error("phi_laplace_identity_residual: needs Re s > 1");
    if (cutoff < 10'000) throw domain_error("phi_laplace_identity_residual: cutoff below 1e4");
    const double x = static_cast<double>(cutoff);
    const double tail = 3.0 * std::exp((1.0 - sigma) * std::log(x)) / (sigma - 1.0);
    const auto phi = phi_series(s, std::min(1e-6, tail / 4.0), opt);
    const auto step = build_theta_step(cutoff, opt.sieve);
    const Complex finite = laplace_exact_step(step, s, std::log(x));
    const double residual = std::abs(phi.value / s - finite);
    return {residual, tail + phi.err / std::abs(s) + 1e-12};
}

// ---------------------------------------------------------------------
// Bounded signals and the closed-form catalog for the contour machinery.
// ---------------------------------------------------------------------
struct BoundedSignal {
    std::function<Complex(double)> evaluator;
    double sup_norm = 0.0;
    std::string description;

    // spot-check the declared bound on a sample of [0, t_max]
    bool validate(int samples = 10'000, double t_max = 50.0) const {
        for (int i = 0; i < samples; ++i) {
            const double t = t_max * static_cast<double>(i) / static_cast<double>(samples - 1);
            if (std::abs(evaluator(t)) > sup_norm * (1.0 + 1e-12)) return false;
        }
        return true;
    }
};

// Newman contour: the circle |z| = R cut back by the line Re z = -delta.
struct ContourSpec {
    double radius = 1.0;
    double delta = 0.5;
    int n_points = 256;
};

inline void validate_contour(const ContourSpec& spec) {
    if (!(spec.radius > 0.0 && spec.delta > 0.0 && spec.delta < spec.radius))
        throw domain_error("ContourSpec: need 0 < delta < radius");
    if (spec.n_points < 64) throw domain_error("ContourSpec: need n_points >= 64");
}

// A signal whose transform is known exactly: the bounds and the contour
// identity are certified on these, then the machinery runs on theta.
struct CatalogSignal {
    BoundedSignal signal;
    std::function<Complex(Complex)> g;                  // Laplace transform
    std::function<Complex(Complex, double)> g_finite;   // g_T(z), closed form
    std::function<Complex(Complex, double)> g_tail;     // g(z) - g_T(z), cancellation-free
    std::vector<Complex> poles;                         // poles of g
};

inline CatalogSignal exp_decay_signal(double a) {
    if (!(a > 0.0)) throw domain_error("exp_decay_signal: need a > 0");
    CatalogSignal cat;
    cat.signal = {[a](double t) { return Complex(std::exp(-a * t), 0.0); }, 1.0,
                  "exp(-" + std::to_string(a) + " t)"};
    cat.g = [a](Complex z) { return 1.0 / (z + a); };
    cat.g_finite = [a](Complex z, double T) { return T * phi1((z + a) * T); };
    cat.g_tail = [a](Complex z, double T) { return std::exp(-(z + a) * T) / (z + a); };
    cat.poles = {Complex(-a, 0.0)};
    return cat;
}

inline CatalogSignal cos_decay_signal(double a, double b) {
    if (!(a > 0.0)) throw domain_error("cos_decay_signal: need a > 0");
    CatalogSignal cat;
    cat.signal = {[a, b](double t) { return Complex(std::cos(b * t) * std::exp(-a * t), 0.0); },
                  1.0, "cos(" + std::to_string(b) + " t) exp(-" + std::to_string(a) + " t)"};
    const Complex wp(a, b), wm(a, -b);
    cat.g = [wp, wm](Complex z) { return 0.5 * (1.0 / (z + wp) + 1.0 / (z + wm)); };
    cat.g_finite = [wp, wm](Complex z, double T) {
        return 0.5 * T * (phi1((z + wp) * T) + phi1((z + wm) * T));
    };
    cat.g_tail = [wp, wm](Complex z, double T) {
        return 0.5 * (std::exp(-(z + wp) * T) / (z + wp) + std::exp(-(z + wm) * T) / (z + wm));
    };
    cat.poles = {-wp, -wm};
    return cat;
}

inline CatalogSignal unit_signal() {
    CatalogSignal cat;
    cat.signal = {[](double) { return Complex(1.0, 0.0); }, 1.0, "1"};
    cat.g = [](Complex z) { return 1.0 / z; };
    cat.g_finite = [](Complex z, double T) { return T * phi1(z * T); };
    cat.g_tail = [](Complex z, double T) { return std::exp(-z * T) / z; };
    cat.poles = {Complex(0.0, 0.0)};
    return cat;
}

// Piecewise-constant signal: levels[i] on [knots[i-1], knots[i]), with
// knots[-1] = 0 and the last level extending to infinity.
inline CatalogSignal step_signal(std::vector<double> knots, std::vector<Complex> levels) {
    if (levels.size() != knots.size() + 1) throw domain_error("step_signal: need one more level than knots");
    for (std::size_t i = 0; i < knots.size(); ++i)
        if (knots[i] <= (i ? knots[i - 1] : 0.0)) throw domain_error("step_signal: knots must increase from 0");
    double sup = 0.0;
    for (const Complex& c : levels) sup = std::max(sup, std::abs(c));
    CatalogSignal cat;
    auto shared_knots = std::make_shared<std::vector<double>>(std::move(knots));
    auto shared_levels = std::make_shared<std::vector<Complex>>(std::move(levels));
    cat.signal = {[shared_knots, shared_levels](double t) {
                      const auto it = std::upper_bound(shared_knots->begin(), shared_knots->end(), t);
                      return (*shared_levels)[static_cast<std::size_t>(it - shared_knots->begin())];
                  },
                  sup, "step"};
    auto finite = [shared_knots, shared_levels](Complex z, double T) {
        ComplexCompensatedSum acc;
        double a = 0.0;
        for (std::size_t i = 0; i <= shared_knots->size(); ++i) {
            const double b = std::min(i < shared_knots->size() ? (*shared_knots)[i] : T, T);
            if (b <= a) break;
            const Complex c = (*shared_levels)[i];
            if (z == Complex(0.0, 0.0))
                acc.add(c * (b - a));
            else
                acc.add(c * (b - a) * std::exp(-z * a) * phi1(z * (b - a)));
            a = b;
        }
        return acc.value();
    };
    cat.g_finite = finite;
    cat.g = [shared_knots, shared_levels](Complex z) {
        if (!(z.real() > 0.0))
            throw domain_error("step_signal: g(z) defined for Re z > 0");
        ComplexCompensatedSum acc;
        double a = 0.0;
        for (std::size_t i = 0; i < shared_knots->size(); ++i) {
            const double b = (*shared_knots)[i];
            acc.add((*shared_levels)[i] * (b - a) * std::exp(-z * a) * phi1(z * (b - a)));
            a = b;
        }
        acc.add(shared_levels->back() * std::exp(-z * a) / z);
        return acc.value();
    };
    cat.g_tail = [g = cat.g, finite](Complex z, double T) { return g(z) - finite(z, T); };
    cat.poles = {Complex(0.0, 0.0)};
    return cat;
}

// theta(e^t) e^{-t} - 1, the signal the whole argument is about.
inline BoundedSignal theta_bounded_signal(std::shared_ptr<const ThetaStep> step) {
    return {[step](double t) {
                return Complex(step->theta_at_exp(t) * std::exp(-t) - 1.0, 0.0);
            },
            4.0, "theta(e^t) e^{-t} - 1"};
}

// ---------------------------------------------------------------------
// Finite-interval transform by adaptive quadrature (works for any
// bounded signal; the step family also has closed forms above).
// ---------------------------------------------------------------------
inline Complex g_T(const BoundedSignal& signal, Complex z, double T, double tol = 1e-10) {
    if (!(T > 0.0)) throw domain_error("g_T: need T > 0");
    const double scale = signal.sup_norm * std::exp(std::max(0.0, -z.real() * T)) * (1.0 + T);
    auto result = adaptive_simpson(
        [&](double t) { return signal.evaluator(t) * std::exp(-z * t); }, 0.0, T,
        tol * std::max(1.0, scale));
    return result.value;
}

// |g(z) - g_T(z)| <= ||f|| e^{-T Re z}/Re z on the right half plane.
// g comes from the closed form, g_T from quadrature: two routes.
inline bool bound_rz1_check(const CatalogSignal& cat, Complex z, double T) {
    if (!(z.real() > 0.0)) throw domain_error("bound_rz1_check: needs Re z > 0");
    const double bound = cat.signal.sup_norm * std::exp(-T * z.real()) / z.real();
    const Complex finite = g_T(cat.signal, z, T, 1e-12);
    const double lhs = std::abs(cat.g(z) - finite);
    return lhs <= bound * (1.0 + 1e-9) + 1e-10;
}

// |g_T(z)| <= ||f|| e^{-T Re z}/|Re z| on the left half plane.  The
// kernel grows there, so g_T uses the catalog's closed form (quadrature
// cannot chase discontinuous steps under an e^{|Re z| t} magnifier).
inline bool bound_rz2_check(const CatalogSignal& cat, Complex z, double T) {
    if (!(z.real() < 0.0)) throw domain_error("bound_rz2_check: needs Re z < 0");
    const double bound = cat.signal.sup_norm * std::exp(-T * z.real()) / std::abs(z.real());
    const double lhs = std::abs(cat.g_finite(z, T));
    return lhs <= bound * (1.0 + 1e-9) + 1e-10;
}

// On |z| = R the kernel weight collapses: |1/z + z/R^2| = 2 |Re z| / R^2.
inline bool circle_factor_check(Complex z, double R) {
    if (std::abs(std::abs(z) - R) > 1e-12 * std::max(1.0, R))
        throw domain_error("circle_factor_check: z must sit on |z| = R");
    const double lhs = std::abs(1.0 / z + z / (R * R));
    const double rhs = 2.0 * std::abs(z.real()) / (R * R);
    return std::abs(lhs - rhs) <= 1e-10;
}

// ---------------------------------------------------------------------
// The contour identity: g_T(0) - g(0) equals the C_R integral of
// (g_T - g) e^{zT} (1 + z^2/R^2) / z over the cut circle.
// ---------------------------------------------------------------------
inline double newman_contour_residual(const CatalogSignal& cat, const ContourSpec& spec,
                                      double T) {
    validate_contour(spec);
    const double R = spec.radius, delta = spec.delta;
    const double clearance = std::sqrt(R * R - delta * delta);
    for (const Complex& q : cat.poles) {
        const double gap = 1e-6 * std::max(1.0, R);
        const bool inside = std::abs(q) < R - gap && q.real() > -delta + gap;
        // poles sitting on (or hugging) the arc or the chord poison the quadrature
        const bool near_arc = std::abs(std::abs(q) - R) <= gap && q.real() >= -delta - gap;
        const bool near_chord =
            std::abs(q.real() + delta) <= gap && std::abs(q.imag()) <= clearance + gap;
        if (inside || near_arc || near_chord)
            throw contour_error("newman_contour_residual: g has a pole at " +
                                std::to_string(q.real()) + (q.imag() < 0 ? " - " : " + ") +
                                std::to_string(std::abs(q.imag())) +
                                "i inside or on the contour");
    }

    // integrand; g_T - g = -g_tail keeps the huge e^{zT} factor harmless
    const auto h = [&](Complex z) {
        return -cat.g_tail(z, T) * std::exp(z * T) * (1.0 + z * z / (R * R)) / z;
    };

    const double phi_cut = std::acos(-delta / R);
    const double height = std::sqrt(R * R - delta * delta);
    const int panels = std::max(4, spec.n_points / 16);

    // counterclockwise: arc through Re z = R, then the chord downward
    const Complex arc = gauss_integrate(
        [&](double theta) {
            const Complex z = R * cis(theta);
            return h(z) * Complex(0.0, 1.0) * z;
        },
        -phi_cut, phi_cut, 16, panels);
    const Complex chord = gauss_integrate(
        [&](double y) {
            const Complex z(-delta, y);
            return h(z) * Complex(0.0, 1.0);
        },
        -height, height, 16, panels);

    const Complex rhs = (arc - chord) / Complex(0.0, 2.0 * M_PI);
    const Complex lhs = -cat.g_tail(Complex(0.0, 0.0), T);
    return std::abs(lhs - rhs);
}

// ---------------------------------------------------------------------
// Convergence demos: |g_T(0) - g(0)| along a T grid.
// ---------------------------------------------------------------------
struct ConvergencePoint {
    double T = 0.0;
    double abs_error = 0.0;
};

inline std::vector<ConvergencePoint> newman_convergence_demo(const CatalogSignal& cat,
                                                             const std::vector<double>& t_grid) {
    std::vector<ConvergencePoint> out;
    out.reserve(t_grid.size());
    const Complex g0 = cat.g(Complex(0.0, 0.0));
    for (double T : t_grid)
        out.push_back({T, std::abs(cat.g_finite(Complex(0.0, 0.0), T) - g0)});
    return out;
}

// suffix maxima of |values|: the envelope that must not rise
inline std::vector<double> suffix_max_envelope(const std::vector<double>& values) {
    std::vector<double> env(values.size());
    double running = 0.0;
    for (std::size_t i = values.size(); i-- > 0;) {
        running = std::max(running, std::abs(values[i]));
        env[i] = running;
    }
    return env;
}

inline bool envelope_decreasing(const std::vector<ConvergencePoint>& pts) {
    if (pts.size() < 2) return true;
    std::vector<double> v;
    v.reserve(pts.size());
    for (const auto& p : pts) v.push_back(p.abs_error);
    const auto env = suffix_max_envelope(v);
    for (std::size_t i = 1; i < env.size(); ++i)
        if (env[i] > env[i - 1] * (1.0 + 1e-12)) return false;
    return env.back() < env.front();
}

// ---------------------------------------------------------------------
// The PNT improper integral: F(y) = int_1^y (theta(t) - t)/t^2 dt in
// closed form over prime gaps, plus a fitted c/x remainder for the tail.
// ---------------------------------------------------------------------
namespace detail {

// F at each checkpoint (increasing, within [1, cutoff]), one sieve pass
inline std::vector<double> theta_integral_checkpoints(const std::vector<double>& xs,
                                                      std::uint64_t cutoff,
                                                      const SieveOptions& opt = {}) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] < 1.0 || xs[i] > static_cast<double>(cutoff))
            throw coverage_error("theta integral: checkpoint outside [1, cutoff]");
        if (i && xs[i] <= xs[i - 1])
            throw domain_error("theta integral: checkpoints must increase");
    }
    std::vector<double> out(xs.size());
    CompensatedSum f_acc;     // running integral
    CompensatedSum theta_acc; // running theta
    double a = 1.0;
    std::size_t next = 0;
    // contribution of [a, b) with theta = c: c (b-a)/(ab) - log1p((b-a)/a)
    const auto piece = [](double c, double a0, double b0) {
        return c * (b0 - a0) / (a0 * b0) - std::log1p((b0 - a0) / a0);
    };
    const auto advance_to = [&](double b) {
        const double c = theta_acc.value();
        while (next < xs.size() && xs[next] <= b) {
            out[next] = f_acc.value() + piece(c, a, xs[next]);
            ++next;
        }
        f_acc.add(piece(c, a, b));
        a = b;
    };
    for_each_prime(
        cutoff,
        [&](std::uint64_t p) {
            const double pd = static_cast<double>(p);
            if (pd > a) advance_to(pd);
            theta_acc.add(std::log(pd));
        },
        opt);
    advance_to(static_cast<double>(cutoff));
    while (next < xs.size()) out[next++] = f_acc.value();
    return out;
}

} // namespace detail

struct PntTailSeries {
    std::vector<double> x;
    std::vector<double> integral;  // I(x) = int_x^inf (theta(t)-t)/t^2 dt (with fitted tail)
    double g0_estimate = 0.0;      // I(1)
    double fit_c = 0.0;            // remainder model c/x, fitted on the last two decades
    double cutoff = 0.0;
};

inline PntTailSeries pnt_integral_tail_series(const std::vector<double>& xs,
                                              std::uint64_t cutoff,
                                              const SieveOptions& opt = {}) {
    if (cutoff < 10'000) throw domain_error("pnt_integral_tail_series: cutoff below 1e4");
    const double xc = static_cast<double>(cutoff);
    std::vector<double> points = xs;
    points.push_back(xc / 100.0);
    points.push_back(xc);
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    const auto f_values = detail::theta_integral_checkpoints(points, cutoff, opt);
    const auto f_at = [&](double x) {
        const auto it = std::lower_bound(points.begin(), points.end(), x);
        return f_values[static_cast<std::size_t>(it - points.begin())];
    };
    const double f_cut = f_at(xc);
    // remainder R(y) ~ c/y; two decades pin c via F(X) - F(X/100) = 99 c / X
    const double c = (f_cut - f_at(xc / 100.0)) * xc / 99.0;
    const double remainder = c / xc;
    PntTailSeries out;
    out.x = xs;
    out.fit_c = c;
    out.cutoff = xc;
    out.g0_estimate = f_cut + remainder;
    out.integral.reserve(xs.size());
    for (double x : xs) out.integral.push_back(f_cut - f_at(x) + remainder);
    return out;
}

inline double pnt_integral_tail(double x, std::uint64_t cutoff, const SieveOptions& opt = {}) {
    if (!(x >= 1.0)) throw domain_error("pnt_integral_tail: need x >= 1");
    if (x > static_cast<double>(cutoff)) throw coverage_error("pnt_integral_tail: x beyond cutoff");
    return pnt_integral_tail_series({x}, cutoff, opt).integral.front();
}

// g(0) from the integral side: I(1) with the fitted remainder.
inline double theta_g0_from_tail(std::uint64_t cutoff, const SieveOptions& opt = {}) {
    return pnt_integral_tail_series({1.0}, cutoff, opt).g0_estimate;
}

// g(0) from the Phi side: lim_{s->1+} (Phi(s)/s - 1/(s-1)), sampled at
// s = 1 + 10^-k and extrapolated linearly in the offset.
inline double theta_g0_from_phi(const ZetaOptions& opt = {}) {
    double prev_delta = 0.0, prev_val = 0.0;
    double extrapolated = 0.0;
    for (int k = 2; k <= 5; ++k) {
        const double delta = std::pow(10.0, -k);
        const Complex s(1.0 + delta, 0.0);
        const auto phi = phi_continued(s, 1e-4, {}, opt);
        const double val = (phi.value / s - 1.0 / (s - 1.0)).real();
        if (k > 2) extrapolated = (prev_delta * val - delta * prev_val) / (prev_delta - delta);
        prev_delta = delta;
        prev_val = val;
    }
    return extrapolated;
}

// Convergence of the finite PNT integral toward its limit, with the
// tail-extrapolated value standing in for g(0).
inline std::vector<ConvergencePoint> theta_convergence_demo(const std::vector<double>& t_grid,
                                                            std::uint64_t cutoff,
                                                            const SieveOptions& opt = {}) {
    std::vector<double> xs;
    xs.reserve(t_grid.size());
    for (double T : t_grid) xs.push_back(std::min(std::exp(T), static_cast<double>(cutoff)));
    const auto series = pnt_integral_tail_series(xs, cutoff, opt);
    // |g_T(0) - g(0)| = |I(e^T)| under F(e^T) = g0 - I(e^T)
    std::vector<ConvergencePoint> out;
    out.reserve(t_grid.size());
    for (std::size_t i = 0; i < t_grid.size(); ++i)
        out.push_back({t_grid[i], std::abs(series.integral[i])});
    return out;
}

// Substitution identity between the x-form and t-form of the integral,
// both evaluated piecewise-exactly at a matched finite cutoff.
inline double laplace_substitution_residual(double cutoff_x, std::uint64_t prime_cutoff,
                                            const SieveOptions& opt = {}) {
    if (!(cutoff_x > 1.0) || cutoff_x > static_cast<double>(prime_cutoff))
        throw domain_error("laplace_substitution_residual: need 1 < cutoff_x <= prime_cutoff");
    const double x_form = detail::theta_integral_checkpoints({cutoff_x}, prime_cutoff, opt)[0];
    // t-form: int_0^{log X} (theta(e^t) e^{-t} - 1) dt over log-prime breakpoints
    const double t_end = std::log(cutoff_x);
    CompensatedSum acc;
    CompensatedSum theta_acc;
    double a = 0.0;
    for_each_prime(
        prime_cutoff,
        [&](std::uint64_t p) {
            const double bp = std::log(static_cast<double>(p));
            if (bp > a && a < t_end) {
                const double b = std::min(bp, t_end);
                acc.add(theta_acc.value() * (std::exp(-a) - std::exp(-b)) - (b - a));
                a = b;
            }
            theta_acc.add(std::log(static_cast<double>(p)));
        },
        opt);
    if (a < t_end) acc.add(theta_acc.value() * (std::exp(-a) - std::exp(-t_end)) - (t_end - a));
    return std::abs(x_form - acc.value());
}

// Analyticity proxy: Cauchy integral of g over a square in Re z > B,
// with g recovered by quadrature at the boundary nodes.
inline double laplace_cauchy_residual(const CatalogSignal& cat, Complex center, double half_side,
                                      double growth_bound) {
    const double sigma_min = center.real() - half_side;
    if (!(sigma_min > growth_bound))
        throw domain_error("laplace_cauchy_residual: square must sit in Re z > B");
    // truncation horizon making every node's tail negligible
    const double margin = sigma_min - growth_bound;
    const double T = std::log(cat.signal.sup_norm / (1e-13 * margin)) / margin;
    const auto g_node = [&](Complex z) { return g_T(cat.signal, z, T, 1e-13); };
    const Complex c0 = center - Complex(half_side, half_side);
    const Complex c1 = center + Complex(half_side, -half_side);
    const Complex c2 = center + Complex(half_side, half_side);
    const Complex c3 = center + Complex(-half_side, half_side);
    const auto side = [&](Complex from, Complex to) {
        const Complex dir = to - from;
        return gauss_integrate([&](double u) { return g_node(from + u * dir) * dir; }, 0.0, 1.0,
                               16, 8);
    };
    const Complex loop = side(c0, c1) + side(c1, c2) + side(c2, c3) + side(c3, c0);
    return std::abs(loop);
}

} // namespace pntlab
