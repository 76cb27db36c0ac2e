#pragma once

// Integer polynomials and their root counts modulo prime powers.

#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "critline/arith.hpp"

namespace critline::arith {

/// Polynomial with integer coefficients, stored lowest degree first and
/// trimmed so that the leading coefficient is nonzero (the zero polynomial
/// has no coefficients and degree -1).
class IntPolynomial {
public:
    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<i64> coefficients_low_first);
    IntPolynomial(std::initializer_list<i64> coefficients_low_first);

    // Convenience for a x^2 + b x + c.
    static IntPolynomial quadratic(i64 a, i64 b, i64 c) { return IntPolynomial({c, b, a}); }

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    std::span<const i64> coefficients() const { return coeffs_; }
    i64 leading() const { return coeffs_.empty() ? 0 : coeffs_.back(); }

    // F(x) mod m, result in [0, m).
    u64 eval_mod(u64 x, u64 m) const;
    i128 eval(i64 x) const;
    IntPolynomial derivative() const;
    // gcd of the coefficients (0 for the zero polynomial).
    u64 content() const;
    // Coefficients divided exactly by d.
    IntPolynomial divided(i64 d) const;
    // Discriminant; fraction-free elimination on the Sylvester matrix for degree > 2.
    i128 discriminant() const;
    // True when every coefficient is divisible by m (F vanishes as a polynomial mod m).
    bool vanishes_mod(u64 m) const;

    bool operator==(const IntPolynomial&) const = default;

private:
    std::vector<i64> coeffs_;
};

struct RootCount {
    u64 count = 0;
    // F is the zero polynomial modulo p^alpha; count is then p^alpha.
    bool identically_zero = false;
};

/// Roots x in [1, p^alpha] of F(x) == 0 mod p^alpha by direct evaluation.
RootCount count_roots_exhaustive(const IntPolynomial& f, u64 p, int alpha);

/// Same count by lifting roots mod p^k to p^(k+1): nonsingular roots lift
/// uniquely, singular roots branch over all p candidates.
RootCount count_roots_lifting(const IntPolynomial& f, u64 p, int alpha);

inline constexpr u64 kExhaustiveRootThreshold = 100000;

/// Exhaustive below kExhaustiveRootThreshold, lifting above.
RootCount count_poly_roots_mod_pk(const IntPolynomial& f, u64 p, int alpha);

struct HuxleyReport {
    u64 p = 0;
    int alpha = 0;
    i128 discriminant = 0;
    u64 roots = 0;            // N(F, p^alpha) for the polynomial as given
    int content_valuation = 0;  // p-adic valuation of the content
    u64 reduced_roots = 0;    // roots of F / p^c modulo p^(alpha - c)
    double bound = 0.0;       // r (p^(alpha-c), disc(F / p^c))^(1/2)
    double literal_bound = 0.0;  // r (p^alpha, disc F)^(1/2) on the unreduced polynomial
    bool literal_pass = false;
    bool skipped = false;     // F vanishes identically modulo p^alpha
    bool pass = false;
};

/// Root count against r * gcd(p^alpha, disc)^(1/2). The bound is applied to
/// the p-primitive part F / p^c at exponent alpha - c, where p^c exactly
/// divides the content; N(F, p^alpha) = p^c N(F / p^c, p^(alpha - c)).
/// Throws std::invalid_argument when the discriminant is zero or the degree
/// is below 2.
HuxleyReport huxley_bound_check(const IntPolynomial& f, u64 p, int alpha);

}  // namespace critline::arith
