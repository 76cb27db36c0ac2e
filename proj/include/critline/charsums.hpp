#pragma once

// Complete character sums of the shifted rational function
//   F(x) = (x+v1)(x+v2) / ((x+v3)(x+v4))
// over Z/q, the classification of shift quadruples, and the complete-sum
// bounds for prime-power and general moduli.

#include <array>
#include <complex>
#include <cstdint>
#include <string_view>

#include "critline/characters.hpp"
#include "critline/polynomial.hpp"
#include "critline/slack.hpp"

namespace critline::charsums {

using arith::DirichletCharacter;
using arith::i64;
using arith::IntPolynomial;
using arith::RootOfUnitySum;
using arith::u64;

enum class QuadClass { V1_few_distinct, V3_delta_zero, V4_general, V5_balanced };

std::string_view to_string(QuadClass c);

struct ShiftQuadruple {
    std::array<i64, 4> v{};
    i64 L = 0;  // (v1+v2) - (v3+v4)
    i64 M = 0;  // v3 v4 - v1 v2
    i64 N = 0;  // (v1+v2) v3 v4 - (v3+v4) v1 v2
    i64 delta = 0;  // (v1-v3)(v1-v4)(v2-v3)(v2-v4) = M^2 + L N
    QuadClass cls = QuadClass::V1_few_distinct;

    // (x+v3)^2 (x+v4)^2 F'(x) = -L x^2 + 2M x + N.
    IntPolynomial derivative_numerator() const;
    // {v1, v2} == {v3, v4} as multisets, i.e. F is identically 1.
    bool is_trivial() const;
    bool balanced() const { return L == 0; }
};

ShiftQuadruple classify_quadruple(i64 v1, i64 v2, i64 v3, i64 v4);

struct CompleteSumResult {
    RootOfUnitySum value;
    u64 skipped_terms = 0;  // lambda with a non-unit among the four shifted arguments
    u64 modulus = 1;

    std::complex<double> complex() const { return value.value(); }
    double abs() const { return value.abs(); }
};

/// sum_lambda chi(l+v1) chi(l+v2) conj(chi(l+v3)) conj(chi(l+v4)); a term is 0
/// when any of the four arguments is a non-unit.
CompleteSumResult rational_char_sum(const DirichletCharacter& chi, const ShiftQuadruple& quad);

/// Same sum as chi(num * den^{-1} mod q) with num = (l+v1)(l+v2), den = (l+v3)(l+v4).
CompleteSumResult rational_char_sum_by_inverse(const DirichletCharacter& chi, const ShiftQuadruple& quad);

/// Product over the prime-power components of chi of the local complete sums.
CompleteSumResult rational_char_sum_crt(const DirichletCharacter& chi, const ShiftQuadruple& quad);

/// sum_lambda chi(l+v1) conj(chi(l+v4)).
CompleteSumResult pair_char_sum(const DirichletCharacter& chi, i64 v1, i64 v4);

/// Readings of the quadratic whose roots govern the prime-power bound.
enum class BurgessPolynomial {
    Literal,             // L x^2 + M x + N
    DoubledMiddle,       // L x^2 + 2M x + N
    DerivativeNumerator  // -L x^2 + 2M x + N, the numerator of F'
};

IntPolynomial burgess_polynomial(const ShiftQuadruple& quad, BurgessPolynomial reading);

/// Prime-power right-hand side in terms of N(p^k), the number of roots of
/// `poly` modulo p^k in [1, p^k], with the parity cases for odd p and p = 2.
double burgess_prime_power_rhs(const IntPolynomial& poly, u64 p, int alpha);

struct SumReport {
    u64 q = 0;
    u64 char_index = 0;
    std::array<i64, 4> v{};
    QuadClass cls = QuadClass::V1_few_distinct;
    double abs_sum = 0.0;
    double rhs_core = 0.0;
    double ratio = 0.0;
    bool pass = false;
    bool skipped = false;
    // Product, inverse and (where computed) CRT evaluations agree exactly.
    bool paths_agree = true;
    // Prime-power check only: right side and verdict per BurgessPolynomial reading.
    std::array<double, 3> reading_rhs{};
    std::array<bool, 3> reading_pass{};
};

/// chi primitive modulo p^alpha. Checked reading is DerivativeNumerator; all
/// three readings are reported. Quadruples with F identically 1 are skipped.
SumReport burgess_prime_power_check(const DirichletCharacter& chi, const ShiftQuadruple& quad);

/// chi primitive modulo q, delta != 0. Core (q,delta)^{1/2} q^{1/2} when
/// v1+v2 != v3+v4, else (q,(v1-v4)(v2-v4)) q^{1/2}; pass iff ratio <= slack(q).
SumReport burgess_general_check(const DirichletCharacter& chi, const ShiftQuadruple& quad,
                                const SlackPolicy& slack);

struct PairSumReport {
    u64 q = 0;
    u64 char_index = 0;
    i64 v1 = 0, v4 = 0;
    double abs_sum = 0.0;
    double bound = 0.0;  // constant * gcd(q, v1 - v4)
    bool pass = false;
    // The sum equals the Ramanujan sum c_q(v1 - v4).
    bool matches_ramanujan = false;
};

PairSumReport degenerate_pair_sum_check(const DirichletCharacter& chi, i64 v1, i64 v4, double constant = 1.0);

}  // namespace critline::charsums
