#pragma once

// Exact integer arithmetic used throughout: factorization, modular
// operations, the Chinese remainder map and classical multiplicative
// functions (Mobius, Euler phi, divisor count, Ramanujan sums).

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace critline::arith {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;
using u128 = unsigned __int128;

struct PrimePower {
    u64 p = 0;
    int alpha = 0;

    u64 value() const;
    bool operator==(const PrimePower&) const = default;
};

/// A positive modulus together with its prime factorization, primes ascending.
class FactoredModulus {
public:
    FactoredModulus() : q_(1) {}
    FactoredModulus(u64 q, std::vector<PrimePower> factors);

    u64 modulus() const { return q_; }
    std::span<const PrimePower> factors() const { return factors_; }
    std::size_t size() const { return factors_.size(); }
    u64 totient() const;
    u64 divisor_count() const;

private:
    u64 q_;
    std::vector<PrimePower> factors_;
};

// Trial division; adequate for q up to ~1e12.
FactoredModulus factorize(u64 q);

// Deterministic Miller-Rabin for all 64-bit n.
bool is_prime(u64 n);

u64 mulmod(u64 a, u64 b, u64 m);
u64 powmod(u64 base, u64 exp, u64 m);

// Least nonnegative residue of a modulo m (m >= 1).
u64 reduce(i64 a, u64 m);

// Inverse of a modulo m, or nullopt when gcd(a, m) > 1.
std::optional<u64> inverse_mod(i64 a, u64 m);

u64 gcd_signed(i64 a, u64 m);

int mobius(u64 n);
u64 euler_phi(u64 n);
u64 divisor_count(u64 n);
std::vector<u64> divisors(u64 n);

// p-adic valuation of a nonzero integer.
int valuation(i128 n, u64 p);

// n mod p^alpha for each prime-power factor, in factor order.
std::vector<u64> crt_decompose(i64 n, const FactoredModulus& q);
// Inverse of crt_decompose; residues are taken modulo the matching factor.
u64 crt_compose(std::span<const u64> residues, const FactoredModulus& q);

/// Ramanujan sum c_q(n) by the divisor formula sum_{d | (q,n)} d mu(q/d).
i64 ramanujan_sum(u64 q, i64 n);

/// Ramanujan sum evaluated as the exponential sum over units modulo q.
/// The floating sum is rounded; throws std::runtime_error if it is not
/// within 1e-6 of an integer.
i64 ramanujan_sum_exponential(u64 q, i64 n);

}  // namespace critline::arith
