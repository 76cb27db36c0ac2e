#pragma once

// Dirichlet characters modulo q.
//
// Every character is stored as exponent data against fixed generators of the
// local unit groups: the smallest primitive root of (Z/p^a)* for odd p, -1 for
// modulus 4, and the pair (-1, 5) for 2^a with a >= 3. Values are exact roots
// of unity exp(2 pi i k / e) where e is the exponent of (Z/q)*; only sums are
// ever converted to complex doubles.
//
// Enumeration order: character index is the mixed-radix number formed by the
// generator exponents, factors ascending by prime, last generator fastest.
// Index 0 is the principal character.

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include <json.hpp>

#include "critline/arith.hpp"

namespace critline::arith {

/// A finite formal sum of n-th roots of unity: element of Z[x]/(x^n - 1).
/// Equality is exact, after lifting both sides to a common order.
class RootOfUnitySum {
public:
    explicit RootOfUnitySum(u64 order = 1);

    u64 order() const { return counts_.size(); }
    std::span<const i64> counts() const { return counts_; }
    void add(u64 index, i64 multiplicity = 1);

    // Sum of multiplicities (the count of unimodular terms).
    i64 terms() const;
    std::complex<double> value() const;
    double abs() const { return std::abs(value()); }

    RootOfUnitySum lifted(u64 order) const;
    RootOfUnitySum conj() const;
    // Exact test that the value is 0: the counts polynomial is divisible by
    // the order-th cyclotomic polynomial.
    bool is_zero() const;

    friend RootOfUnitySum operator*(const RootOfUnitySum& a, const RootOfUnitySum& b);
    friend bool operator==(const RootOfUnitySum& a, const RootOfUnitySum& b);

private:
    std::vector<i64> counts_;
};

/// Unit group of Z/p^a with the generator convention described above.
struct LocalUnitGroup {
    PrimePower prime_power;
    u64 modulus = 1;
    std::vector<u64> generators;
    std::vector<u64> orders;
    // logs[r * generators.size() + j]: exponent of generator j in r, -1 for non-units.
    std::vector<std::int32_t> logs;

    explicit LocalUnitGroup(PrimePower pp);
    static u64 smallest_primitive_root(PrimePower pp);
};

namespace detail {
struct GroupData;
}

class DirichletCharacter {
public:
    u64 modulus() const;
    const FactoredModulus& factored_modulus() const;
    u64 index() const { return index_; }

    // Exponent on each generator, in generator order.
    std::span<const u64> exponents() const { return exponents_; }
    // Order e of the roots of unity used for values (exponent of the unit group).
    u64 value_order() const;

    // k with chi(n) = exp(2 pi i k / value_order()), or nullopt when gcd(n, q) > 1.
    std::optional<u64> log(i64 n) const;
    std::complex<double> operator()(i64 n) const;
    std::complex<double> root(u64 k) const;

    u64 conductor() const;
    bool is_primitive() const { return conductor() == modulus(); }
    bool is_principal() const { return index_ == 0; }
    // Multiplicative order of the character.
    u64 order() const;

    DirichletCharacter conj() const;
    DirichletCharacter operator*(const DirichletCharacter& other) const;
    // Component modulo the i-th prime power factor, with the local group's conventions.
    DirichletCharacter local(std::size_t factor) const;

private:
    friend class CharacterGroup;
    DirichletCharacter(std::shared_ptr<const detail::GroupData> group, u64 index);

    std::shared_ptr<const detail::GroupData> group_;
    u64 index_ = 0;
    std::vector<u64> exponents_;
    std::shared_ptr<const std::vector<std::int32_t>> table_;
    mutable std::optional<u64> conductor_;
};

class CharacterGroup {
public:
    explicit CharacterGroup(u64 q);

    u64 modulus() const;
    const FactoredModulus& factored_modulus() const;
    u64 size() const;
    u64 exponent() const;
    std::span<const u64> generator_orders() const;

    DirichletCharacter character(u64 index) const;
    DirichletCharacter character_from_exponents(std::span<const u64> exponents) const;
    std::vector<DirichletCharacter> characters() const;
    std::vector<DirichletCharacter> primitive_characters() const;

    // Snapshot: modulus, factor list, generators, per-character exponents and conductor.
    nlohmann::json to_json() const;

private:
    std::shared_ptr<const detail::GroupData> data_;
};

std::vector<DirichletCharacter> enumerate_characters(u64 q);

}  // namespace critline::arith
