#pragma once
#include <cmath>
#include <complex>

namespace pntlab {

using Complex = std::complex<double>;

// exp(i*phi)
inline Complex cis(double phi) noexcept {
    return {std::cos(phi), std::sin(phi)};
}

// x^w for real x > 0 and complex w, avoiding the generic std::pow path.
inline Complex pow_real_base(double x, Complex w) noexcept {
    const double lx = std::log(x);
    return std::exp(w.real() * lx) * cis(w.imag() * lx);
}

// x^{-w} via the log, the workhorse of every Dirichlet-type sum here.
inline Complex inv_pow(double x, Complex w) noexcept {
    const double lx = std::log(x);
    return std::exp(-w.real() * lx) * cis(-w.imag() * lx);
}

// exp(z) - 1 without cancellation for small |z|.
inline Complex cexpm1(Complex z) noexcept {
    if (std::abs(z) > 0.5) return std::exp(z) - 1.0;
    // Taylor tail: z*(1 + z/2*(1 + z/3*(...)))
    Complex acc = 0.0;
    for (int k = 20; k >= 2; --k) acc = (acc + 1.0) * (z / static_cast<double>(k));
    return z * (1.0 + acc);
}

// (1 - e^{-w})/w, the finite-interval transform kernel; stable near w = 0.
inline Complex phi1(Complex w) noexcept {
    if (std::abs(w) < 1e-12) return 1.0 - w / 2.0;
    return -cexpm1(-w) / w;
}

} // namespace pntlab
