#include <doctest.h>

#include <cmath>
#include <complex>
#include <numeric>
#include <random>

#include "critline/arith.hpp"

using namespace critline::arith;

namespace {

std::vector<std::pair<u64, int>> pairs(const FactoredModulus& f) {
    std::vector<std::pair<u64, int>> out;
    for (const auto& pp : f.factors()) out.emplace_back(pp.p, pp.alpha);
    return out;
}

// Trial-division oracles.
int mobius_oracle(u64 n) {
    int mu = 1;
    for (u64 p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        mu = -mu;
    }
    return n > 1 ? -mu : mu;
}

u64 phi_oracle(u64 n) {
    u64 c = 0;
    for (u64 k = 1; k <= n; ++k) c += std::gcd(k, n) == 1;
    return c;
}

}  // namespace

TEST_CASE("factorize examples") {
    CHECK(pairs(factorize(12)) == std::vector<std::pair<u64, int>>{{2, 2}, {3, 1}});
    CHECK(factorize(1).factors().empty());
    CHECK(pairs(factorize(360)) == std::vector<std::pair<u64, int>>{{2, 3}, {3, 2}, {5, 1}});
    CHECK(pairs(factorize(999999937)) == std::vector<std::pair<u64, int>>{{999999937, 1}});
}

TEST_CASE("factorization reproduces q with distinct ascending primes") {
    for (u64 q = 1; q <= 5000; ++q) {
        const auto f = factorize(q);
        u64 prod = 1, last = 0;
        for (const auto& pp : f.factors()) {
            CHECK(pp.alpha >= 1);
            CHECK(pp.p > last);
            CHECK(is_prime(pp.p));
            last = pp.p;
            prod *= pp.value();
        }
        CHECK(prod == q);
    }
}

TEST_CASE("is_prime against a sieve") {
    std::vector<bool> sieve(20000, true);
    sieve[0] = sieve[1] = false;
    for (std::size_t i = 2; i < sieve.size(); ++i)
        if (sieve[i])
            for (std::size_t j = i * i; j < sieve.size(); j += i) sieve[j] = false;
    for (u64 n = 0; n < sieve.size(); ++n) CHECK(is_prime(n) == sieve[n]);
    CHECK(is_prime(18446744073709551557ull));
    CHECK_FALSE(is_prime(3215031751ull));  // strong pseudoprime to bases 2, 3, 5, 7
}

TEST_CASE("multiplicative functions match trial-division oracles") {
    for (u64 n = 1; n <= 600; ++n) {
        CHECK(mobius(n) == mobius_oracle(n));
        CHECK(euler_phi(n) == phi_oracle(n));
        u64 dc = 0;
        for (u64 d = 1; d <= n; ++d) dc += n % d == 0;
        CHECK(divisor_count(n) == dc);
        CHECK(divisors(n).size() == dc);
    }
}

TEST_CASE("modular helpers") {
    CHECK(reduce(-1, 7) == 6);
    CHECK(reduce(14, 7) == 0);
    CHECK(*inverse_mod(3, 7) == 5);
    CHECK_FALSE(inverse_mod(4, 6).has_value());
    CHECK(gcd_signed(-12, 18) == 6);
    CHECK(gcd_signed(0, 18) == 18);
    CHECK(powmod(2, 62, 1000000007) == 145586002);
    CHECK(valuation(-72, 2) == 3);
}

TEST_CASE("CRT decompose and compose") {
    const auto f12 = factorize(12);
    CHECK(crt_decompose(7, f12) == std::vector<u64>{3, 1});
    for (u64 q : {1u, 12u, 360u, 1001u, 4096u}) {
        const auto f = factorize(q);
        for (u64 n = 0; n < q; ++n) CHECK(crt_compose(crt_decompose(static_cast<i64>(n), f), f) == n);
    }
    CHECK(crt_compose(crt_decompose(0, factorize(1)), factorize(1)) == 0);
}

TEST_CASE("Ramanujan sum examples and both formulas") {
    CHECK(ramanujan_sum(6, 2) == -1);
    CHECK(ramanujan_sum(5, 1) == -1);
    for (u64 q = 1; q <= 80; ++q) CHECK(ramanujan_sum(q, 0) == static_cast<i64>(euler_phi(q)));
    for (u64 q = 1; q <= 120; ++q)
        for (i64 n = -120; n <= 120; ++n) {
            // direct complex sum as an independent oracle
            std::complex<double> s{};
            for (u64 l = 1; l <= q; ++l)
                if (std::gcd(l, q) == 1) s += std::polar(1.0, 2 * M_PI * static_cast<double>(n) * l / q);
            CHECK(ramanujan_sum(q, n) == std::llround(s.real()));
            CHECK(ramanujan_sum_exponential(q, n) == ramanujan_sum(q, n));
        }
}
