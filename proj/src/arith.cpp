#include "critline/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace critline::arith {

u64 PrimePower::value() const {
    u64 v = 1;
    for (int i = 0; i < alpha; ++i) v *= p;
    return v;
}

FactoredModulus::FactoredModulus(u64 q, std::vector<PrimePower> factors)
    : q_(q), factors_(std::move(factors)) {
    u64 prod = 1;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (factors_[i].alpha < 1 || !is_prime(factors_[i].p))
            throw std::invalid_argument("FactoredModulus: invalid prime power");
        if (i > 0 && factors_[i - 1].p >= factors_[i].p)
            throw std::invalid_argument("FactoredModulus: primes must be ascending");
        prod *= factors_[i].value();
    }
    if (prod != q_) throw std::invalid_argument("FactoredModulus: product mismatch");
}

u64 FactoredModulus::totient() const {
    u64 phi = 1;
    for (const auto& f : factors_) phi *= f.value() / f.p * (f.p - 1);
    return phi;
}

u64 FactoredModulus::divisor_count() const {
    u64 d = 1;
    for (const auto& f : factors_) d *= static_cast<u64>(f.alpha + 1);
    return d;
}

FactoredModulus factorize(u64 q) {
    if (q == 0) throw std::invalid_argument("factorize: q must be positive");
    std::vector<PrimePower> out;
    u64 n = q;
    for (u64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p != 0) continue;
        int a = 0;
        while (n % p == 0) {
            n /= p;
            ++a;
        }
        out.push_back({p, a});
    }
    if (n > 1) out.push_back({n, 1});
    return FactoredModulus(q, std::move(out));
}

u64 mulmod(u64 a, u64 b, u64 m) {
    return static_cast<u64>(static_cast<u128>(a) * b % m);
}

u64 powmod(u64 base, u64 exp, u64 m) {
    if (m == 1) return 0;
    u64 result = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

u64 reduce(i64 a, u64 m) {
    if (m == 0) throw std::invalid_argument("reduce: zero modulus");
    i128 r = static_cast<i128>(a) % static_cast<i128>(m);
    if (r < 0) r += m;
    return static_cast<u64>(r);
}

u64 gcd_signed(i64 a, u64 m) {
    u64 ua = a < 0 ? static_cast<u64>(-(a + 1)) + 1 : static_cast<u64>(a);
    return std::gcd(ua, m);
}

std::optional<u64> inverse_mod(i64 a, u64 m) {
    if (m == 1) return 0;
    i128 r0 = static_cast<i128>(m), r1 = reduce(a, m);
    i128 s0 = 0, s1 = 1;
    while (r1 != 0) {
        i128 qt = r0 / r1;
        i128 tmp = r0 - qt * r1;
        r0 = r1;
        r1 = tmp;
        tmp = s0 - qt * s1;
        s0 = s1;
        s1 = tmp;
    }
    if (r0 != 1) return std::nullopt;
    if (s0 < 0) s0 += m;
    return static_cast<u64>(s0);
}

int mobius(u64 n) {
    if (n == 0) throw std::invalid_argument("mobius: n must be positive");
    int mu = 1;
    const FactoredModulus fm = factorize(n);
    for (const auto& f : fm.factors()) {
        if (f.alpha > 1) return 0;
        mu = -mu;
    }
    return mu;
}

u64 euler_phi(u64 n) { return factorize(n).totient(); }

u64 divisor_count(u64 n) { return factorize(n).divisor_count(); }

std::vector<u64> divisors(u64 n) {
    std::vector<u64> out{1};
    const FactoredModulus fm = factorize(n);
    for (const auto& f : fm.factors()) {
        const std::size_t base = out.size();
        u64 pk = 1;
        for (int k = 1; k <= f.alpha; ++k) {
            pk *= f.p;
            for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

int valuation(i128 n, u64 p) {
    if (n == 0) throw std::invalid_argument("valuation: zero has infinite valuation");
    int v = 0;
    while (n % static_cast<i128>(p) == 0) {
        n /= static_cast<i128>(p);
        ++v;
    }
    return v;
}

std::vector<u64> crt_decompose(i64 n, const FactoredModulus& q) {
    std::vector<u64> out;
    out.reserve(q.size());
    for (const auto& f : q.factors()) out.push_back(reduce(n, f.value()));
    return out;
}

u64 crt_compose(std::span<const u64> residues, const FactoredModulus& q) {
    if (residues.size() != q.size())
        throw std::invalid_argument("crt_compose: residue count does not match factor count");
    const u64 m = q.modulus();
    u64 x = 0;
    for (std::size_t i = 0; i < residues.size(); ++i) {
        const u64 pk = q.factors()[i].value();
        const u64 cofactor = m / pk;
        const u64 inv = *inverse_mod(static_cast<i64>(cofactor % pk), pk);
        const u64 term = mulmod(mulmod(residues[i] % pk, inv, pk), cofactor, m);
        x = (x + term) % m;
    }
    return x;
}

i64 ramanujan_sum(u64 q, i64 n) {
    if (q == 0) throw std::invalid_argument("ramanujan_sum: q must be positive");
    const u64 g = n == 0 ? q : gcd_signed(n, q);
    i64 total = 0;
    for (u64 d : divisors(g)) total += static_cast<i64>(d) * mobius(q / d);
    return total;
}

i64 ramanujan_sum_exponential(u64 q, i64 n) {
    if (q == 0) throw std::invalid_argument("ramanujan_sum_exponential: q must be positive");
    const u64 r = reduce(n, q);
    double re = 0.0;
    for (u64 lam = 1; lam <= q; ++lam) {
        if (std::gcd(lam, q) != 1) continue;
        const u64 k = mulmod(r, lam, q);
        re += std::cos(2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(q));
    }
    const double rounded = std::round(re);
    if (std::abs(re - rounded) > 1e-6)
        throw std::runtime_error("ramanujan_sum_exponential: sum is not near an integer");
    return static_cast<i64>(rounded);
}

}  // namespace critline::arith
