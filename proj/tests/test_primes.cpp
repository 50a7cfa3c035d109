#include "catch_amalgamated.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "pntlab/primes.hpp"

using namespace pntlab;

namespace {

// Independent oracle: primality by trial division.
bool is_prime_trial(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::uint64_t pi_trial(std::uint64_t x) {
    std::uint64_t c = 0;
    for (std::uint64_t n = 2; n <= x; ++n)
        if (is_prime_trial(n)) ++c;
    return c;
}

} // namespace

TEST_CASE("sieve_primes basic tables") {
    auto t10 = sieve_primes(10);
    REQUIRE(t10.primes == std::vector<std::uint64_t>{2, 3, 5, 7});

    auto t1000 = sieve_primes(1000);
    CHECK(t1000.primes.size() == 168);
    CHECK(t1000.primes.front() == 2);
    CHECK(t1000.primes.back() == 997);

    CHECK(sieve_primes(0).primes.empty());
    CHECK(sieve_primes(1).primes.empty());
    CHECK(sieve_primes(2).primes == std::vector<std::uint64_t>{2});
}

TEST_CASE("sieve completeness against trial division") {
    // every entry prime, all primes present, strictly increasing
    auto table = sieve_primes(100000);
    CHECK(table.primes.size() == pi_trial(100000));
    CHECK(table.primes.size() == 9592);
    for (std::size_t i = 1; i < table.primes.size(); ++i)
        REQUIRE(table.primes[i] > table.primes[i - 1]);
    std::mt19937_64 rng(12345);
    for (int k = 0; k < 200; ++k) {
        const std::uint64_t n = rng() % 100000;
        REQUIRE(table.contains(n) == is_prime_trial(n));
    }
}

TEST_CASE("sieve memory budget produces a resource error naming the budget") {
    SieveOptions opt;
    opt.memory_budget_bytes = 1024;
    try {
        sieve_primes(10'000'000, opt);
        FAIL("expected resource_error");
    } catch (const resource_error& e) {
        CHECK(std::string(e.what()).find("budget") != std::string::npos);
    }
}

TEST_CASE("prime_pi: sieve and sublinear methods agree bit-exactly") {
    const std::uint64_t xs[] = {0, 1, 2, 3, 10, 100, 1000, 9999, 100000,
                                999983, 1000000, 5000000, 10000000};
    for (std::uint64_t x : xs) {
        const std::uint64_t by_sieve = prime_pi_sieve(x);
        const std::uint64_t by_lucy = prime_pi_sublinear(x);
        INFO("x = " << x);
        REQUIRE(by_sieve == by_lucy);
    }
    CHECK(prime_pi(1).pi == 0);
    CHECK(prime_pi(1).method == PiMethod::sieve);
    CHECK(prime_pi(1000000).pi == 78498);
    CHECK(prime_pi(100000000).pi == 5761455);
    CHECK(prime_pi(100000000).method == PiMethod::sublinear);
    CHECK(prime_pi(1000000000).pi == 50847534);
}

TEST_CASE("prime_pi monotone on random pairs") {
    std::mt19937_64 rng(99);
    for (int k = 0; k < 20; ++k) {
        std::uint64_t a = rng() % 2000000, b = rng() % 2000000;
        if (a > b) std::swap(a, b);
        REQUIRE(prime_pi(a).pi <= prime_pi(b).pi);
    }
}

TEST_CASE("prime_pi hard cap") {
    CHECK_THROWS_AS(prime_pi(20'000'000'000'000ull), resource_error);
}

TEST_CASE("nth_prime basics and inverse consistency") {
    CHECK(nth_prime(1) == 2);
    CHECK(nth_prime(4) == 7);
    CHECK(nth_prime(168) == 997);
    CHECK(nth_prime(78498) == 999983);
    CHECK_THROWS_AS(nth_prime(0), domain_error);
    for (std::uint64_t n : {1ull, 4ull, 168ull, 10000ull}) {
        const std::uint64_t p = nth_prime(n);
        REQUIRE(prime_pi(p).pi == n);
    }
    SieveOptions tight;
    tight.memory_budget_bytes = 4096;
    CHECK_THROWS_AS(nth_prime(10'000'000, tight), resource_error);
}

TEST_CASE("chebyshev_theta small values") {
    CHECK(chebyshev_theta(0.0).theta == 0.0);
    CHECK(chebyshev_theta(1.0).theta == 0.0);
    CHECK(chebyshev_theta(1.99).theta == 0.0);
    // theta(10) = log 210
    auto t10 = chebyshev_theta(10.0);
    CHECK(t10.theta == Catch::Approx(5.3471075307174685).epsilon(1e-14));
    CHECK(t10.err < 1e-12);
    CHECK_THROWS_AS(chebyshev_theta(-1.0), domain_error);
}

TEST_CASE("chebyshev_theta at 1e6 against straight long-double oracle") {
    // straight higher-precision summation, independent of CompensatedSum
    long double ref = 0.0L;
    for_each_prime(1000000, [&](std::uint64_t p) { ref += logl(static_cast<long double>(p)); });
    auto got = chebyshev_theta(1e6);
    CHECK(std::abs(got.theta - static_cast<double>(ref)) <= got.err + 1e-9);
    CHECK(got.theta == Catch::Approx(998484.1750256323).epsilon(1e-12));
}

TEST_CASE("theta grid pass is monotone and matches single evaluations") {
    std::vector<double> grid = {1.0, 2.0, 10.0, 97.0, 1000.5, 50000.0, 100000.0};
    auto samples = chebyshev_theta_grid(grid);
    REQUIRE(samples.size() == grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        auto single = chebyshev_theta(grid[i]);
        CHECK(samples[i].theta == Catch::Approx(single.theta).margin(1e-9));
        if (i) CHECK(samples[i].theta >= samples[i - 1].theta);
    }
}

TEST_CASE("theta doubling gap") {
    CHECK(theta_doubling_gap(1) == Catch::Approx(std::log(2.0)));
    CHECK(theta_doubling_gap(4) == Catch::Approx(std::log(35.0)).epsilon(1e-14));
    const double log2 = std::log(2.0);
    for (std::uint64_t n : {1ull, 2ull, 10ull, 1000ull, 99991ull}) {
        CHECK(theta_doubling_gap(n) <= 2.0 * static_cast<double>(n) * log2);
    }
    // scan over every n <= 1e5 (acceptance covers 1e6)
    auto scan = theta_doubling_scan(100000);
    CHECK(scan.max_excess <= 0.0);
}

TEST_CASE("lower squeeze chain: theta >= (1-eps)(pi - x^{1-eps}) log x") {
    auto grid = [] {
        std::vector<double> g;
        for (double x = 2.0; x <= 1e6; x *= 1.12) g.push_back(x);
        return g;
    }();
    auto samples = prime_grid_pass(grid);
    for (double eps : {0.1, 0.3}) {
        for (const auto& s : samples) {
            const double floor_count =
                static_cast<double>(s.pi) - std::pow(s.x, 1.0 - eps);
            const double lower = (1.0 - eps) * floor_count * std::log(s.x);
            INFO("eps = " << eps << ", x = " << s.x);
            REQUIRE(s.theta >= lower - 1e-9);
        }
    }
}

TEST_CASE("prime_grid_pass counts and sums in one sweep") {
    std::vector<double> grid = {2.0, 10.0, 100.0, 1000.0, 100000.0};
    auto samples = prime_grid_pass(grid);
    REQUIRE(samples.size() == 5);
    CHECK(samples[0].pi == 1);
    CHECK(samples[1].pi == 4);
    CHECK(samples[2].pi == 25);
    CHECK(samples[3].pi == 168);
    CHECK(samples[4].pi == 9592);
    CHECK(samples[1].theta == Catch::Approx(5.3471075307174685));
    CHECK_THROWS_AS(prime_grid_pass({5.0, 5.0}), domain_error);
}

TEST_CASE("checkpoint lines round-trip") {
    std::vector<PiCheckpoint> cps = {
        {1000, 168, PiMethod::sieve},
        {1000000000000ull, 37607912018ull, PiMethod::sublinear},
    };
    std::stringstream ss;
    write_pi_checkpoints(ss, cps);
    CHECK(ss.str() == "1000\t168\tsieve\n1000000000000\t37607912018\tsublinear\n");
    auto back = read_pi_checkpoints(ss);
    REQUIRE(back.size() == 2);
    CHECK(back[0].x == 1000);
    CHECK(back[0].pi == 168);
    CHECK(back[0].method == PiMethod::sieve);
    CHECK(back[1].x == 1000000000000ull);
    CHECK(back[1].method == PiMethod::sublinear);

    std::stringstream bad("12\t5\tguesswork\n");
    CHECK_THROWS_AS(read_pi_checkpoints(bad), error);
}

TEST_CASE("for_each_prime_in_range matches filtered full sieve") {
    std::vector<std::uint64_t> ranged;
    for_each_prime_in_range(50, 200, [&](std::uint64_t p) { ranged.push_back(p); });
    std::vector<std::uint64_t> filtered;
    for_each_prime(200, [&](std::uint64_t p) {
        if (p > 50) filtered.push_back(p);
    });
    CHECK(ranged == filtered);

    // crossing a segment boundary
    SieveOptions tiny;
    tiny.segment_size = 1u << 14;
    std::vector<std::uint64_t> a, b;
    for_each_prime_in_range(16000, 17000, [&](std::uint64_t p) { a.push_back(p); }, tiny);
    for_each_prime(17000, [&](std::uint64_t p) {
        if (p > 16000) b.push_back(p);
    });
    CHECK(a == b);
}
