#pragma once
#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include "pntlab/errors.hpp"

namespace pntlab {

// ---------------------------------------------------------------------
// Gauss-Legendre rules on [-1, 1], nodes by Newton iteration on P_n.
// ---------------------------------------------------------------------
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

inline GaussRule make_gauss_rule(int n) {
    GaussRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double z1, pp;
        do {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1);
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            z1 = z;
            z = z1 - p1 / pp;
        } while (std::abs(z - z1) > 1e-15);
        r.nodes[i] = -z;
        r.nodes[n - 1 - i] = z;
        r.weights[i] = r.weights[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
    }
    return r;
}

// Cached rule lookup; map nodes are reference-stable.
inline const GaussRule& gauss_rule(int n) {
    static std::mutex mu;
    static std::map<int, GaussRule> cache;
    std::scoped_lock lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, make_gauss_rule(n)).first;
    return it->second;
}

// Composite Gauss-Legendre over [a, b] split into `panels` equal pieces.
template <class F>
auto gauss_integrate(F&& f, double a, double b, int order, int panels)
    -> decltype(f(a)) {
    const GaussRule& rule = gauss_rule(order);
    using T = decltype(f(a));
    T total{};
    const double w = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * w;
        const double mid = lo + w / 2.0, half = w / 2.0;
        T acc{};
        for (int i = 0; i < order; ++i)
            acc += rule.weights[i] * f(mid + half * rule.nodes[i]);
        total += half * acc;
    }
    return total;
}

// ---------------------------------------------------------------------
// Adaptive Simpson with Richardson correction.  Works for real- and
// complex-valued integrands; `err` accumulates the local estimates.
// ---------------------------------------------------------------------
template <class T>
struct QuadratureResult {
    T value{};
    double err = 0.0;
};

namespace detail {

template <class F, class T>
T simpson_recurse(F& f, double a, double b, T fa, T fm, T fb, T whole,
                  double tol, int depth, double& err) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const T flm = f(lm), frm = f(rm);
    const T left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const T right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const T delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol || depth <= 0) {
        if (depth <= 0 && std::abs(delta) > 15.0 * tol)
            throw numeric_error("adaptive Simpson: recursion depth exhausted before tolerance");
        err += std::abs(delta) / 15.0;
        return left + right + delta / 15.0;
    }
    return simpson_recurse(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1, err) +
           simpson_recurse(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1, err);
}

} // namespace detail

// Integrate f over [a, b] to absolute tolerance `tol`.
template <class F>
auto adaptive_simpson(F&& f, double a, double b, double tol, int max_depth = 48)
    -> QuadratureResult<decltype(f(a))> {
    using T = decltype(f(a));
    QuadratureResult<T> out;
    if (a == b) return out;
    const double m = 0.5 * (a + b);
    const T fa = f(a), fm = f(m), fb = f(b);
    const T whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    out.value = detail::simpson_recurse(f, a, b, fa, fm, fb, whole, tol, max_depth, out.err);
    return out;
}

} // namespace pntlab
