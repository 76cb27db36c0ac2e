#include "critline/charsums.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace critline::charsums {

using arith::reduce;

std::string_view to_string(QuadClass c) {
    switch (c) {
        case QuadClass::V1_few_distinct: return "V1";
        case QuadClass::V3_delta_zero: return "V3";
        case QuadClass::V4_general: return "V4";
        case QuadClass::V5_balanced: return "V5";
    }
    return "?";
}

IntPolynomial ShiftQuadruple::derivative_numerator() const { return IntPolynomial::quadratic(-L, 2 * M, N); }

bool ShiftQuadruple::is_trivial() const {
    return (v[0] == v[2] && v[1] == v[3]) || (v[0] == v[3] && v[1] == v[2]);
}

ShiftQuadruple classify_quadruple(i64 v1, i64 v2, i64 v3, i64 v4) {
    ShiftQuadruple s;
    s.v = {v1, v2, v3, v4};
    s.L = (v1 + v2) - (v3 + v4);
    s.M = v3 * v4 - v1 * v2;
    s.N = (v1 + v2) * v3 * v4 - (v3 + v4) * v1 * v2;
    s.delta = (v1 - v3) * (v1 - v4) * (v2 - v3) * (v2 - v4);
    std::array<i64, 4> sorted = s.v;
    std::sort(sorted.begin(), sorted.end());
    const auto distinct = std::unique(sorted.begin(), sorted.end()) - sorted.begin();
    if (distinct <= 2)
        s.cls = QuadClass::V1_few_distinct;
    else if (s.delta == 0)
        s.cls = QuadClass::V3_delta_zero;
    else if (s.L != 0)
        s.cls = QuadClass::V4_general;
    else
        s.cls = QuadClass::V5_balanced;
    return s;
}

CompleteSumResult rational_char_sum(const DirichletCharacter& chi, const ShiftQuadruple& quad) {
    const u64 q = chi.modulus();
    const u64 e = chi.value_order();
    CompleteSumResult out{RootOfUnitySum(e), 0, q};
    for (u64 lam = 0; lam < q; ++lam) {
        std::array<u64, 4> k{};
        bool unit = true;
        for (int i = 0; i < 4; ++i) {
            const auto lg = chi.log(static_cast<i64>(lam) + quad.v[i]);
            if (!lg) {
                unit = false;
                break;
            }
            k[i] = *lg;
        }
        if (!unit) {
            ++out.skipped_terms;
            continue;
        }
        out.value.add((k[0] + k[1] + 2 * e - k[2] - k[3]) % e);
    }
    return out;
}

CompleteSumResult rational_char_sum_by_inverse(const DirichletCharacter& chi, const ShiftQuadruple& quad) {
    const u64 q = chi.modulus();
    CompleteSumResult out{RootOfUnitySum(chi.value_order()), 0, q};
    for (u64 lam = 0; lam < q; ++lam) {
        const i64 l = static_cast<i64>(lam);
        const u64 num = arith::mulmod(reduce(l + quad.v[0], q), reduce(l + quad.v[1], q), q);
        const u64 den = arith::mulmod(reduce(l + quad.v[2], q), reduce(l + quad.v[3], q), q);
        const auto inv = arith::inverse_mod(static_cast<i64>(den), q);
        if (!inv || std::gcd(num, q) != 1) {
            ++out.skipped_terms;
            continue;
        }
        out.value.add(*chi.log(static_cast<i64>(arith::mulmod(num, *inv, q))));
    }
    return out;
}

CompleteSumResult rational_char_sum_crt(const DirichletCharacter& chi, const ShiftQuadruple& quad) {
    const auto& fm = chi.factored_modulus();
    CompleteSumResult out{RootOfUnitySum(1), 0, chi.modulus()};
    out.value.add(0);
    u64 kept = 1;
    for (std::size_t i = 0; i < fm.size(); ++i) {
        const auto local = rational_char_sum(chi.local(i), quad);
        out.value = out.value * local.value;
        kept *= local.modulus - local.skipped_terms;
    }
    out.value = out.value.lifted(chi.value_order());
    out.skipped_terms = chi.modulus() - kept;
    return out;
}

CompleteSumResult pair_char_sum(const DirichletCharacter& chi, i64 v1, i64 v4) {
    const u64 q = chi.modulus();
    const u64 e = chi.value_order();
    CompleteSumResult out{RootOfUnitySum(e), 0, q};
    for (u64 lam = 0; lam < q; ++lam) {
        const auto a = chi.log(static_cast<i64>(lam) + v1);
        const auto b = chi.log(static_cast<i64>(lam) + v4);
        if (!a || !b) {
            ++out.skipped_terms;
            continue;
        }
        out.value.add((*a + e - *b) % e);
    }
    return out;
}

IntPolynomial burgess_polynomial(const ShiftQuadruple& quad, BurgessPolynomial reading) {
    switch (reading) {
        case BurgessPolynomial::Literal: return IntPolynomial::quadratic(quad.L, quad.M, quad.N);
        case BurgessPolynomial::DoubledMiddle: return IntPolynomial::quadratic(quad.L, 2 * quad.M, quad.N);
        case BurgessPolynomial::DerivativeNumerator: return quad.derivative_numerator();
    }
    return {};
}

double burgess_prime_power_rhs(const IntPolynomial& poly, u64 p, int alpha) {
    auto roots = [&](int k) -> double {
        if (k == 0) return 1.0;  // every x satisfies a congruence modulo 1
        return static_cast<double>(arith::count_poly_roots_mod_pk(poly, p, k).count);
    };
    auto pw = [&](double e) { return std::pow(static_cast<double>(p), e); };
    if (alpha % 2 == 0) return roots(alpha / 2) * pw(alpha / 2.0);
    if (p == 2) return roots((alpha + 1) / 2) * pw((alpha + 1) / 2.0);
    return roots((alpha - 1) / 2) * pw(alpha / 2.0) + roots((alpha + 1) / 2) * pw((alpha - 1) / 2.0);
}

namespace {

SumReport base_report(const DirichletCharacter& chi, const ShiftQuadruple& quad) {
    SumReport r;
    r.q = chi.modulus();
    r.char_index = chi.index();
    r.v = quad.v;
    r.cls = quad.cls;
    return r;
}

}  // namespace

SumReport burgess_prime_power_check(const DirichletCharacter& chi, const ShiftQuadruple& quad) {
    const auto& fm = chi.factored_modulus();
    if (fm.size() != 1) throw std::invalid_argument("burgess_prime_power_check: modulus must be a prime power");
    if (!chi.is_primitive()) throw std::invalid_argument("burgess_prime_power_check: character must be primitive");
    SumReport r = base_report(chi, quad);
    if (quad.is_trivial()) {
        r.skipped = true;
        r.pass = true;
        return r;
    }
    const auto direct = rational_char_sum(chi, quad);
    r.paths_agree = direct.value == rational_char_sum_by_inverse(chi, quad).value;
    r.abs_sum = direct.value.is_zero() ? 0.0 : direct.abs();
    const u64 p = fm.factors()[0].p;
    const int alpha = fm.factors()[0].alpha;
    for (int k = 0; k < 3; ++k) {
        const auto reading = static_cast<BurgessPolynomial>(k);
        r.reading_rhs[k] = burgess_prime_power_rhs(burgess_polynomial(quad, reading), p, alpha);
        r.reading_pass[k] = r.abs_sum <= r.reading_rhs[k] * (1.0 + 1e-12);
    }
    const int checked = static_cast<int>(BurgessPolynomial::DerivativeNumerator);
    r.rhs_core = r.reading_rhs[checked];
    r.ratio = r.rhs_core > 0 ? r.abs_sum / r.rhs_core : (r.abs_sum > 0 ? INFINITY : 0.0);
    r.pass = r.reading_pass[checked];
    return r;
}

SumReport burgess_general_check(const DirichletCharacter& chi, const ShiftQuadruple& quad, const SlackPolicy& slack) {
    if (quad.delta == 0) throw std::invalid_argument("burgess_general_check: delta must be nonzero");
    if (!chi.is_primitive()) throw std::invalid_argument("burgess_general_check: character must be primitive");
    SumReport r = base_report(chi, quad);
    const u64 q = chi.modulus();
    const auto direct = rational_char_sum(chi, quad);
    r.paths_agree = direct.value == rational_char_sum_by_inverse(chi, quad).value &&
                    direct.value == rational_char_sum_crt(chi, quad).value;
    r.abs_sum = direct.value.is_zero() ? 0.0 : direct.abs();
    const double sq = std::sqrt(static_cast<double>(q));
    if (!quad.balanced()) {
        r.rhs_core = std::sqrt(static_cast<double>(arith::gcd_signed(quad.delta, q))) * sq;
    } else {
        const i64 d = (quad.v[0] - quad.v[3]) * (quad.v[1] - quad.v[3]);
        r.rhs_core = static_cast<double>(arith::gcd_signed(d, q)) * sq;
    }
    r.ratio = r.abs_sum / r.rhs_core;
    r.pass = r.ratio <= slack.slack(q);
    return r;
}

PairSumReport degenerate_pair_sum_check(const DirichletCharacter& chi, i64 v1, i64 v4, double constant) {
    if (v1 == v4) throw std::invalid_argument("degenerate_pair_sum_check: v1 and v4 must differ");
    if (!chi.is_primitive()) throw std::invalid_argument("degenerate_pair_sum_check: character must be primitive");
    PairSumReport r;
    r.q = chi.modulus();
    r.char_index = chi.index();
    r.v1 = v1;
    r.v4 = v4;
    const auto s = pair_char_sum(chi, v1, v4);
    r.abs_sum = s.abs();
    r.bound = constant * static_cast<double>(arith::gcd_signed(v1 - v4, r.q));
    r.pass = r.abs_sum <= r.bound * (1.0 + 1e-12);
    const double c = static_cast<double>(arith::ramanujan_sum(r.q, v1 - v4));
    r.matches_ramanujan = std::abs(s.complex() - std::complex<double>(c, 0.0)) < 1e-9 * std::max(1.0, r.abs_sum);
    return r;
}

}  // namespace critline::charsums
