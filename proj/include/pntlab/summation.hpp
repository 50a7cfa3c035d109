#pragma once
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>

namespace pntlab {

// Neumaier-compensated summation.  Carries a running correction term and
// enough state to report a bound on the accumulated rounding error, which
// is what lets theta sums over millions of log p terms stay trustworthy.
class CompensatedSum {
public:
    void add(double x) noexcept {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
        abs_ += std::abs(x);
        ++count_;
    }

    double value() const noexcept { return sum_ + comp_; }
    double abs_sum() const noexcept { return abs_; }
    std::size_t count() const noexcept { return count_; }

    // Bound on |computed - exact| for the summation itself, inputs taken
    // as exact: 2*eps*sum|x_i| plus the second-order n*eps^2 term.
    double error_bound() const noexcept {
        constexpr double eps = std::numeric_limits<double>::epsilon();
        return eps * (2.0 * abs_ + static_cast<double>(count_) * eps * abs_);
    }

    void merge(const CompensatedSum& other) noexcept {
        add(other.value());
        abs_ += other.abs_ - std::abs(other.value());
        count_ += other.count_;
    }

private:
    double sum_ = 0.0, comp_ = 0.0, abs_ = 0.0;
    std::size_t count_ = 0;
};

// Compensated accumulation of complex values, one accumulator per part.
class ComplexCompensatedSum {
public:
    void add(std::complex<double> z) noexcept {
        re_.add(z.real());
        im_.add(z.imag());
    }
    std::complex<double> value() const noexcept { return {re_.value(), im_.value()}; }
    double abs_sum() const noexcept { return re_.abs_sum() + im_.abs_sum(); }
    double error_bound() const noexcept { return re_.error_bound() + im_.error_bound(); }
    void merge(const ComplexCompensatedSum& o) noexcept {
        re_.merge(o.re_);
        im_.merge(o.im_);
    }

private:
    CompensatedSum re_, im_;
};

} // namespace pntlab
