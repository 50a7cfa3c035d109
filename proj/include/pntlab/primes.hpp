#pragma once
#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "pntlab/errors.hpp"
#include "pntlab/summation.hpp"

namespace pntlab {

inline std::uint64_t isqrt64(std::uint64_t n) noexcept {
    if (n == 0) return 0;
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

struct SieveOptions {
    // Integers per segment; 2^20 keeps the odd-number bitmap cache-resident.
    std::uint32_t segment_size = 1u << 20;
    // Cap on materialized prime storage (PrimeTable, nth_prime).
    std::uint64_t memory_budget_bytes = 2ull << 30;
};

// Crude upper-ish estimate of pi(x), used only for budget checks.
inline std::uint64_t estimate_prime_count(std::uint64_t limit) noexcept {
    if (limit < 17) return 8;
    const double x = static_cast<double>(limit);
    return static_cast<std::uint64_t>(x / (std::log(x) - 1.2)) + 16;
}

namespace detail {

// Odd primes up to `limit` inclusive, by a plain sieve.  Used to seed the
// segmented pass; limit here is at most sqrt of the main bound.
inline std::vector<std::uint32_t> base_odd_primes(std::uint32_t limit) {
    std::vector<std::uint32_t> out;
    if (limit < 3) return out;
    const std::uint32_t half = (limit - 1) / 2;  // index i <-> odd 2i+1, i >= 1
    std::vector<std::uint8_t> composite(half + 1, 0);
    for (std::uint32_t i = 1; (2 * i + 1) * (2 * i + 1) <= limit; ++i) {
        if (composite[i]) continue;
        const std::uint32_t p = 2 * i + 1;
        for (std::uint32_t j = (p * p - 1) / 2; j <= half; j += p) composite[j] = 1;
    }
    for (std::uint32_t i = 1; i <= half; ++i)
        if (!composite[i]) out.push_back(2 * i + 1);
    return out;
}

// Segmented scan over odd numbers in [3, limit].  seg_fn(lo, hi, words, nwords)
// sees a bitmap where bit b set means lo + 2b is composite.
template <class SegFn>
void scan_odd_segments(std::uint64_t limit, SegFn&& seg_fn, const SieveOptions& opt) {
    if (limit < 3) return;
    const auto base = base_odd_primes(static_cast<std::uint32_t>(isqrt64(limit)));
    const std::uint64_t seg = std::max<std::uint32_t>(opt.segment_size, 1u << 14);
    std::vector<std::uint64_t> words(seg / 128 + 2);
    for (std::uint64_t lo = 3; lo <= limit; lo += seg) {
        const std::uint64_t hi = std::min(limit + 1, lo + seg);  // [lo, hi)
        const std::uint64_t nbits = (hi - lo + 1) / 2;
        const std::uint64_t nwords = (nbits + 63) / 64;
        std::fill(words.begin(), words.begin() + nwords, 0ull);
        for (const std::uint32_t p : base) {
            const std::uint64_t p2 = static_cast<std::uint64_t>(p) * p;
            if (p2 >= hi) break;
            std::uint64_t start = p2;
            if (start < lo) {
                std::uint64_t q = (lo + p - 1) / p;
                if ((q & 1) == 0) ++q;
                start = q * p;
            }
            for (std::uint64_t m = start; m < hi; m += 2ull * p)
                words[(m - lo) >> 7] |= 1ull << (((m - lo) >> 1) & 63);
        }
        // mask stray bits past the segment end
        if (nbits % 64) words[nwords - 1] |= ~((1ull << (nbits % 64)) - 1);
        seg_fn(lo, hi, words.data(), nwords, nbits);
    }
}

} // namespace detail

// Visit all primes <= limit in increasing order.
template <class Fn>
void for_each_prime(std::uint64_t limit, Fn&& fn, const SieveOptions& opt = {}) {
    if (limit >= 2) fn(std::uint64_t{2});
    detail::scan_odd_segments(
        limit,
        [&](std::uint64_t lo, std::uint64_t, const std::uint64_t* words,
            std::uint64_t nwords, std::uint64_t) {
            for (std::uint64_t w = 0; w < nwords; ++w) {
                std::uint64_t free_bits = ~words[w];
                while (free_bits) {
                    const int b = std::countr_zero(free_bits);
                    free_bits &= free_bits - 1;
                    fn(lo + 2 * (64 * w + static_cast<std::uint64_t>(b)));
                }
            }
        },
        opt);
}

// Visit primes in (lo, hi] in increasing order.
template <class Fn>
void for_each_prime_in_range(std::uint64_t lo, std::uint64_t hi, Fn&& fn,
                             const SieveOptions& opt = {}) {
    if (hi < 2 || hi <= lo) return;
    if (lo < 2 && hi >= 2) fn(std::uint64_t{2});
    const auto base = detail::base_odd_primes(static_cast<std::uint32_t>(isqrt64(hi)));
    const std::uint64_t seg = std::max<std::uint32_t>(opt.segment_size, 1u << 14);
    std::uint64_t first = std::max<std::uint64_t>(lo + 1, 3);
    if ((first & 1) == 0) ++first;
    std::vector<std::uint64_t> words(seg / 128 + 2);
    for (std::uint64_t slo = first; slo <= hi; slo += seg) {
        const std::uint64_t shi = std::min(hi + 1, slo + seg);
        const std::uint64_t nbits = (shi - slo + 1) / 2;
        const std::uint64_t nwords = (nbits + 63) / 64;
        std::fill(words.begin(), words.begin() + nwords, 0ull);
        for (const std::uint32_t p : base) {
            const std::uint64_t p2 = static_cast<std::uint64_t>(p) * p;
            if (p2 >= shi) break;
            std::uint64_t start = p2;
            if (start < slo) {
                std::uint64_t q = (slo + p - 1) / p;
                if ((q & 1) == 0) ++q;
                start = q * p;
            }
            for (std::uint64_t m = start; m < shi; m += 2ull * p)
                words[(m - slo) >> 7] |= 1ull << (((m - slo) >> 1) & 63);
        }
        if (nbits % 64) words[nwords - 1] |= ~((1ull << (nbits % 64)) - 1);
        for (std::uint64_t w = 0; w < nwords; ++w) {
            std::uint64_t free_bits = ~words[w];
            while (free_bits) {
                const int b = std::countr_zero(free_bits);
                free_bits &= free_bits - 1;
                fn(slo + 2 * (64 * w + static_cast<std::uint64_t>(b)));
            }
        }
    }
}

// ---------------------------------------------------------------------
// PrimeTable: immutable, sorted, complete list of primes up to `limit`.
// ---------------------------------------------------------------------
struct PrimeTable {
    std::uint64_t limit = 0;
    std::vector<std::uint64_t> primes;

    bool contains(std::uint64_t n) const {
        return std::binary_search(primes.begin(), primes.end(), n);
    }
    // pi(x) for x <= limit, by binary search.
    std::uint64_t count_leq(std::uint64_t x) const {
        return static_cast<std::uint64_t>(
            std::upper_bound(primes.begin(), primes.end(), x) - primes.begin());
    }
};

inline PrimeTable sieve_primes(std::uint64_t limit, const SieveOptions& opt = {}) {
    const std::uint64_t est_bytes = estimate_prime_count(limit) * sizeof(std::uint64_t);
    if (est_bytes > opt.memory_budget_bytes)
        throw resource_error(
            "sieve_primes: a table of primes up to " + std::to_string(limit) +
            " needs about " + std::to_string(est_bytes / (1024 * 1024)) +
            " MiB, exceeding the memory budget of " +
            std::to_string(opt.memory_budget_bytes / (1024 * 1024)) + " MiB");
    PrimeTable table;
    table.limit = limit;
    table.primes.reserve(limit >= 10 ? estimate_prime_count(limit) : 4);
    for_each_prime(limit, [&](std::uint64_t p) { table.primes.push_back(p); }, opt);
    return table;
}

// ---------------------------------------------------------------------
// Exact prime counting.
// ---------------------------------------------------------------------
enum class PiMethod { sieve, sublinear };

inline const char* to_string(PiMethod m) noexcept {
    return m == PiMethod::sieve ? "sieve" : "sublinear";
}

struct PiCheckpoint {
    std::uint64_t x = 0;
    std::uint64_t pi = 0;
    PiMethod method = PiMethod::sieve;
};

struct PiOptions {
    std::uint64_t sieve_threshold = 10'000'000;   // below this, count by sieve
    std::uint64_t max_x = 10'000'000'000'000ull;  // 1e13 hard cap
    SieveOptions sieve;
};

inline std::uint64_t prime_pi_sieve(std::uint64_t x, const SieveOptions& opt = {}) {
    if (x < 2) return 0;
    std::uint64_t count = (x >= 2) ? 1 : 0;
    detail::scan_odd_segments(
        x,
        [&](std::uint64_t, std::uint64_t, const std::uint64_t* words,
            std::uint64_t nwords, std::uint64_t) {
            // the scan masks stray bits past the segment end, so ~word
            // has population exactly equal to the unmarked odds in range
            for (std::uint64_t w = 0; w < nwords; ++w) count += std::popcount(~words[w]);
        },
        opt);
    return count;
}

// pi(x) in O(x^{3/4}) time and O(sqrt x) space: iteratively strikes, per
// prime p <= sqrt(x), all integers whose least prime factor is p from the
// counts S(v) = #{2..v not yet struck}, tabulated at v = x/k and v <= sqrt x.
inline std::uint64_t prime_pi_sublinear(std::uint64_t x) {
    if (x < 2) return 0;
    const std::uint64_t r = isqrt64(x);
    std::vector<std::uint64_t> small(r + 1), large(r + 1);
    for (std::uint64_t v = 1; v <= r; ++v) small[v] = v - 1;
    for (std::uint64_t k = 1; k <= r; ++k) large[k] = x / k - 1;
    for (std::uint64_t p = 2; p <= r; ++p) {
        if (small[p] == small[p - 1]) continue;  // p composite
        const std::uint64_t cnt = small[p - 1];
        const std::uint64_t p2 = p * p;
        const std::uint64_t kmax = std::min(r, x / p2);
        for (std::uint64_t k = 1; k <= kmax; ++k) {
            const std::uint64_t kp = k * p;
            if (kp <= r)
                large[k] -= large[kp] - cnt;
            else
                large[k] -= small[x / kp] - cnt;
        }
        for (std::uint64_t v = r; v >= p2; --v) small[v] -= small[v / p] - cnt;
    }
    return large[1];
}

inline PiCheckpoint prime_pi(std::uint64_t x, const PiOptions& opt = {}) {
    if (x > opt.max_x)
        throw resource_error("prime_pi: x = " + std::to_string(x) +
                             " exceeds the supported bound of " + std::to_string(opt.max_x));
    if (x <= opt.sieve_threshold)
        return {x, prime_pi_sieve(x, opt.sieve), PiMethod::sieve};
    return {x, prime_pi_sublinear(x), PiMethod::sublinear};
}

// The n-th prime (1-based: nth_prime(1) = 2).
inline std::uint64_t nth_prime(std::uint64_t n, const SieveOptions& opt = {}) {
    if (n == 0) throw domain_error("nth_prime: n must be >= 1");
    // Rosser-type upper bound, valid for n >= 6; padded for small n.
    const double nd = static_cast<double>(n);
    std::uint64_t bound = 16;
    if (n >= 6)
        bound = static_cast<std::uint64_t>(nd * (std::log(nd) + std::log(std::log(nd)))) + 8;
    if (estimate_prime_count(bound) * sizeof(std::uint64_t) > opt.memory_budget_bytes)
        throw resource_error(
            "nth_prime: n = " + std::to_string(n) + " needs a prime table past the " +
            std::to_string(opt.memory_budget_bytes / (1024 * 1024)) + " MiB memory budget");
    std::uint64_t count = 0, answer = 0;
    for_each_prime(
        bound,
        [&](std::uint64_t p) {
            if (++count == n) answer = p;
        },
        opt);
    if (answer == 0) throw numeric_error("nth_prime: bound estimate fell short");
    return answer;
}

// ---------------------------------------------------------------------
// Chebyshev theta.
// ---------------------------------------------------------------------
struct ThetaValue {
    double x = 0.0;
    double theta = 0.0;
    double err = 0.0;  // absolute rounding-error bound for the sum
};

namespace detail {

inline double theta_error_bound(const CompensatedSum& acc) noexcept {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    // summation error plus one ulp per log evaluation
    return acc.error_bound() + eps * acc.abs_sum();
}

} // namespace detail

// theta at each point of an increasing grid, in a single sieve pass.
inline std::vector<ThetaValue> chebyshev_theta_grid(const std::vector<double>& grid,
                                                    const SieveOptions& opt = {}) {
    std::vector<ThetaValue> out;
    out.reserve(grid.size());
    if (grid.empty()) return out;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid[i] < 0) throw domain_error("chebyshev_theta: x must be >= 0");
        if (i && grid[i] <= grid[i - 1]) throw domain_error("chebyshev_theta_grid: grid must be increasing");
    }
    const double xmax = grid.back();
    const std::uint64_t limit = xmax < 2 ? 0 : static_cast<std::uint64_t>(xmax);
    CompensatedSum acc;
    std::size_t next = 0;
    for_each_prime(
        limit,
        [&](std::uint64_t p) {
            const double pd = static_cast<double>(p);
            while (next < grid.size() && grid[next] < pd) {
                out.push_back({grid[next], acc.value(), detail::theta_error_bound(acc)});
                ++next;
            }
            acc.add(std::log(pd));
        },
        opt);
    while (next < grid.size()) {
        out.push_back({grid[next], acc.value(), detail::theta_error_bound(acc)});
        ++next;
    }
    return out;
}

inline ThetaValue chebyshev_theta(double x, const SieveOptions& opt = {}) {
    if (x < 0) throw domain_error("chebyshev_theta: x must be >= 0");
    if (x < 2) return {x, 0.0, 0.0};
    return chebyshev_theta_grid({x}, opt).front();
}

// theta(2n) - theta(n), summed directly over the primes in (n, 2n].
inline double theta_doubling_gap(std::uint64_t n, const SieveOptions& opt = {}) {
    if (n == 0) throw domain_error("theta_doubling_gap: n must be >= 1");
    CompensatedSum acc;
    for_each_prime_in_range(n, 2 * n, [&](std::uint64_t p) { acc.add(std::log(static_cast<double>(p))); }, opt);
    return acc.value();
}

struct DoublingScanResult {
    double max_excess = -std::numeric_limits<double>::infinity();  // max gap - 2n log 2
    std::uint64_t argmax = 0;
};

// Checks theta(2n) - theta(n) <= 2n log 2 for every n <= n_max using a
// prefix table of theta at integer arguments.
inline DoublingScanResult theta_doubling_scan(std::uint64_t n_max, const SieveOptions& opt = {}) {
    if (n_max == 0) throw domain_error("theta_doubling_scan: n_max must be >= 1");
    const std::uint64_t top = 2 * n_max;
    std::vector<double> prefix(top + 1, 0.0);
    for_each_prime(top, [&](std::uint64_t p) { prefix[p] = std::log(static_cast<double>(p)); }, opt);
    CompensatedSum acc;
    for (std::uint64_t i = 2; i <= top; ++i) {
        if (prefix[i] != 0.0) acc.add(prefix[i]);
        prefix[i] = acc.value();
    }
    const double log2 = std::log(2.0);
    DoublingScanResult res;
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        const double excess = (prefix[2 * n] - prefix[n]) - 2.0 * static_cast<double>(n) * log2;
        if (excess > res.max_excess) {
            res.max_excess = excess;
            res.argmax = n;
        }
    }
    return res;
}

// Joint pi/theta sampling over an increasing grid, one sieve pass.
struct PrimeGridSample {
    double x = 0.0;
    std::uint64_t pi = 0;
    double theta = 0.0;
    double theta_err = 0.0;
};

inline std::vector<PrimeGridSample> prime_grid_pass(const std::vector<double>& grid,
                                                    const SieveOptions& opt = {}) {
    std::vector<PrimeGridSample> out;
    out.reserve(grid.size());
    if (grid.empty()) return out;
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (grid[i] <= grid[i - 1]) throw domain_error("prime_grid_pass: grid must be increasing");
    const std::uint64_t limit = grid.back() < 2 ? 0 : static_cast<std::uint64_t>(grid.back());
    CompensatedSum acc;
    std::uint64_t count = 0;
    std::size_t next = 0;
    for_each_prime(
        limit,
        [&](std::uint64_t p) {
            const double pd = static_cast<double>(p);
            while (next < grid.size() && grid[next] < pd) {
                out.push_back({grid[next], count, acc.value(), detail::theta_error_bound(acc)});
                ++next;
            }
            acc.add(std::log(pd));
            ++count;
        },
        opt);
    while (next < grid.size()) {
        out.push_back({grid[next], count, acc.value(), detail::theta_error_bound(acc)});
        ++next;
    }
    return out;
}

// ---------------------------------------------------------------------
// Checkpoint persistence: one "x<TAB>pi<TAB>method" line per checkpoint.
// ---------------------------------------------------------------------
inline void write_pi_checkpoints(std::ostream& os, const std::vector<PiCheckpoint>& cps) {
    for (const auto& c : cps) os << c.x << '\t' << c.pi << '\t' << to_string(c.method) << '\n';
}

inline std::vector<PiCheckpoint> read_pi_checkpoints(std::istream& is) {
    std::vector<PiCheckpoint> out;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        PiCheckpoint c;
        std::string method;
        if (!(ls >> c.x >> c.pi >> method))
            throw error("checkpoint parse failure on line: " + line);
        if (method == "sieve")
            c.method = PiMethod::sieve;
        else if (method == "sublinear")
            c.method = PiMethod::sublinear;
        else
            throw error("checkpoint parse failure: unknown method tag '" + method + "'");
        out.push_back(c);
    }
    return out;
}

} // namespace pntlab
