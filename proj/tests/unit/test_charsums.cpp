#include <doctest.h>

#include <cmath>
#include <complex>
#include <set>

#include "critline/charsums.hpp"

using namespace critline;
using namespace critline::charsums;
using arith::CharacterGroup;
using cplx = std::complex<double>;

namespace {

// Floating brute force, independent of the exact root-of-unity path.
cplx brute(const DirichletCharacter& chi, std::array<i64, 4> v) {
    cplx s{};
    for (i64 l = 1; l <= static_cast<i64>(chi.modulus()); ++l)
        s += chi(l + v[0]) * chi(l + v[1]) * std::conj(chi(l + v[2])) * std::conj(chi(l + v[3]));
    return s;
}

}  // namespace

TEST_CASE("classification examples") {
    CHECK(classify_quadruple(1, 2, 1, 2).cls == QuadClass::V1_few_distinct);
    const auto a = classify_quadruple(1, 2, 3, 4);
    CHECK(a.delta == 12);
    CHECK(a.cls == QuadClass::V4_general);
    const auto b = classify_quadruple(1, 4, 2, 3);
    CHECK(b.delta == 4);
    CHECK(b.cls == QuadClass::V5_balanced);
    CHECK(classify_quadruple(1, 2, 3, 1).cls == QuadClass::V3_delta_zero);
}

TEST_CASE("coefficient identity and exhaustive classification") {
    int counts[4] = {0, 0, 0, 0};
    for (i64 a = -3; a <= 6; ++a)
        for (i64 b = -3; b <= 6; ++b)
            for (i64 c = -3; c <= 6; ++c)
                for (i64 d = -3; d <= 6; ++d) {
                    const auto q = classify_quadruple(a, b, c, d);
                    CHECK(q.L == (a + b) - (c + d));
                    CHECK(q.M == c * d - a * b);
                    CHECK(q.N == (a + b) * c * d - (c + d) * a * b);
                    CHECK(q.delta == (a - c) * (a - d) * (b - c) * (b - d));
                    CHECK(q.M * q.M + q.L * q.N == q.delta);
                    std::set<i64> distinct{a, b, c, d};
                    QuadClass expect;
                    if (distinct.size() <= 2)
                        expect = QuadClass::V1_few_distinct;
                    else if (q.delta == 0)
                        expect = QuadClass::V3_delta_zero;
                    else if (a + b != c + d)
                        expect = QuadClass::V4_general;
                    else
                        expect = QuadClass::V5_balanced;
                    CHECK(q.cls == expect);
                    ++counts[static_cast<int>(q.cls)];
                }
    CHECK(counts[0] + counts[1] + counts[2] + counts[3] == 10000);
}

TEST_CASE("complete sum examples") {
    const CharacterGroup g7(7);
    DirichletCharacter quad = g7.character(0);
    for (const auto& chi : g7.characters())
        if (chi.order() == 2) quad = chi;
    REQUIRE(quad.order() == 2);
    // sum chi(l (l + 1)) = -1 for the quadratic character
    const auto pr = pair_char_sum(quad, 0, -1);
    CHECK(pr.value.value().real() == doctest::Approx(-1.0));
    const auto c = classify_quadruple(3, 3, 3, 3);
    const auto triv = rational_char_sum(quad, c);
    CHECK(triv.value.terms() == 6);
    CHECK(triv.skipped_terms == 1);
    const CharacterGroup g5(5);
    for (const auto& chi : g5.characters()) {
        if (chi.order() != 4) continue;
        const auto s = rational_char_sum(chi, classify_quadruple(1, 2, 3, 4));
        CHECK(std::abs(s.complex() - brute(chi, {1, 2, 3, 4})) < 1e-12);
        CHECK(s.abs() <= 3.0 * std::sqrt(5.0) + 1e-12);
    }
}

TEST_CASE("three evaluation paths agree; symmetries hold") {
    for (u64 q : {15u, 21u, 36u, 45u, 60u, 77u, 225u}) {
        const CharacterGroup g(q);
        const auto chars = g.characters();
        for (std::size_t ci = 0; ci < chars.size(); ci += std::max<std::size_t>(1, chars.size() / 5)) {
            const auto& chi = chars[ci];
            for (i64 a = 1; a <= 6; ++a)
                for (i64 b = 1; b <= 6; b += 2)
                    for (i64 c = 1; c <= 6; ++c)
                        for (i64 d = 2; d <= 6; d += 3) {
                            const auto qd = classify_quadruple(a, b, c, d);
                            const auto s = rational_char_sum(chi, qd);
                            CHECK(s.value == rational_char_sum_by_inverse(chi, qd).value);
                            CHECK(s.value == rational_char_sum_crt(chi, qd).value);
                            CHECK(std::abs(s.complex() - brute(chi, qd.v)) < 1e-9);
                            CHECK(s.abs() <= static_cast<double>(q - s.skipped_terms) + 1e-9);
                            const auto swapped = rational_char_sum(chi, classify_quadruple(c, d, a, b));
                            CHECK(swapped.value == s.value.conj());
                            const auto shifted = rational_char_sum(chi, classify_quadruple(a + 5, b + 5, c + 5, d + 5));
                            CHECK(shifted.value == s.value);
                        }
        }
    }
}

TEST_CASE("prime-power check examples") {
    for (const auto& chi : CharacterGroup(9).primitive_characters()) {
        const auto r = burgess_prime_power_check(chi, classify_quadruple(1, 2, 3, 4));
        CHECK(r.pass);
        CHECK(std::abs(r.abs_sum - std::abs(brute(chi, {1, 2, 3, 4}))) < 1e-9);
    }
    for (const auto& chi : CharacterGroup(8).primitive_characters()) {
        const auto r = burgess_prime_power_check(chi, classify_quadruple(1, 2, 4, 7));
        CHECK(r.pass);
    }
    const auto chi9 = CharacterGroup(9).primitive_characters().front();
    CHECK(burgess_prime_power_check(chi9, classify_quadruple(2, 2, 2, 2)).skipped);
    CHECK_THROWS_AS(burgess_prime_power_check(CharacterGroup(9).character(0), classify_quadruple(1, 2, 3, 4)),
                    std::invalid_argument);
    CHECK_THROWS_AS(burgess_prime_power_check(CharacterGroup(15).primitive_characters().front(),
                                              classify_quadruple(1, 2, 3, 4)),
                    std::invalid_argument);
}

TEST_CASE("general modulus checks") {
    const SlackPolicy slack;
    for (const auto& chi : CharacterGroup(15).primitive_characters()) {
        const auto r = burgess_general_check(chi, classify_quadruple(1, 2, 3, 4), slack);
        CHECK(r.paths_agree);
        CHECK(r.pass);
    }
    CHECK_THROWS_AS(burgess_general_check(CharacterGroup(15).character(0), classify_quadruple(1, 2, 3, 4), slack),
                    std::invalid_argument);
    CHECK_THROWS_AS(burgess_general_check(CharacterGroup(15).primitive_characters().front(),
                                          classify_quadruple(1, 2, 1, 3), slack),
                    std::invalid_argument);
}

TEST_CASE("degenerate pair sums") {
    const CharacterGroup g7(7);
    for (const auto& chi : g7.characters()) {
        if (chi.order() != 2) continue;
        const auto r = degenerate_pair_sum_check(chi, 2, 1);
        CHECK(r.abs_sum == doctest::Approx(1.0));
        CHECK(r.pass);
    }
    for (const auto& chi : CharacterGroup(9).primitive_characters()) {
        const auto r = degenerate_pair_sum_check(chi, 4, 1);
        CHECK(r.pass);
        CHECK(r.matches_ramanujan);
        CHECK(r.bound == doctest::Approx(3.0));
    }
    // v1 = v4 mod q: the sum is the unit count
    const auto chi = CharacterGroup(9).primitive_characters().front();
    const auto s = pair_char_sum(chi, 10, 1);
    CHECK(s.value.terms() == 6);
}
