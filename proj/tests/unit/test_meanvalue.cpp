#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "critline/meanvalue.hpp"

using namespace critline;
using namespace critline::meanvalue;
using arith::CharacterGroup;

namespace {

cplx direct_window(const DirichletCharacter& chi, u64 l, double x, double t, double alpha, i64 D, i64 C) {
    cplx s{};
    for (i64 v = D + 1; v <= D + C; ++v)
        s += chi(static_cast<i64>(l) + v) * std::exp(cplx(0, t * std::log(x + v) + 2 * std::numbers::pi * alpha * v));
    return s;
}

double simpson_moment(const DirichletCharacter& chi, i64 C, const MomentParams& p, int n) {
    const i64 D = window_start(p.V);
    auto g = [&](double x) {
        double acc = 0;
        for (u64 l = 0; l < chi.modulus(); ++l) acc += std::pow(std::abs(direct_window(chi, l, x, p.t, p.alpha, D, C)), 4);
        return acc;
    };
    const double h = (p.B - p.A) / n;
    double s = g(p.A) + g(p.B);
    for (int i = 1; i < n; ++i) s += g(p.A + i * h) * (i % 2 ? 4 : 2);
    return s * h / 3;
}

}  // namespace

TEST_CASE("dyadic decomposition examples") {
    const auto d = dyadic_decompose(5, 8);
    CHECK(d.R == 3);
    CHECK(d.digits == std::vector<int>{1, 0, 1, 0});
    CHECK(d.s == std::vector<i64>{4, 2, 0, 0});
    REQUIRE(d.blocks.size() == 2);
    CHECK(d.blocks[0].size == 4);
    CHECK(d.blocks[0].offset == 0);
    CHECK(d.blocks[1].size == 1);
    CHECK(d.blocks[1].offset == 4);
    const auto e = dyadic_decompose(7, 8);
    REQUIRE(e.blocks.size() == 3);
    CHECK(e.blocks[2].offset == 6);
    CHECK_THROWS_AS(dyadic_decompose(0, 8), std::invalid_argument);
    CHECK_THROWS_AS(dyadic_decompose(9, 8), std::invalid_argument);
}

TEST_CASE("dyadic blocks tile [0, Q)") {
    std::mt19937_64 rng(7);
    for (int it = 0; it < 2000; ++it) {
        const i64 V = 1 + static_cast<i64>(rng() % 5000);
        const i64 Q = 1 + static_cast<i64>(rng() % V);
        const auto d = dyadic_decompose(Q, V);
        i64 pos = 0;
        for (const auto& b : d.blocks) {
            CHECK(b.offset == pos);
            CHECK(b.offset % b.size == 0);
            if (Q <= window_span(V)) CHECK(b.offset / b.size < (i64{1} << (d.R - b.r)));
            pos += b.size;
        }
        CHECK(pos == Q);
    }
}

TEST_CASE("block mass") {
    for (int R = 0; R <= 12; ++R) CHECK(dyadic_block_mass(R) == (R + 1) * (i64{1} << R));
}

TEST_CASE("window sum against direct evaluation") {
    const CharacterGroup g(13);
    const auto chi = g.character(5);
    for (u64 l : {0u, 3u, 12u})
        CHECK(std::abs(window_sum(chi, l, 2.5, 30, 0.3, 4, 4) - direct_window(chi, l, 2.5, 30, 0.3, 4, 4)) < 1e-12);
}

TEST_CASE("fixed window moments") {
    const CharacterGroup g(13);
    const auto chi = g.character(3);
    MomentParams p{.V = 8, .t = 30, .alpha = 0.3, .A = 0, .B = 16};
    // C = 1: the integrand is the number of units
    CHECK(fixed_window_fourth_moment(chi, 1, p).value == doctest::Approx(12.0 * 16));
    const double a = fixed_window_fourth_moment(chi, 3, p).value;
    CHECK(a == doctest::Approx(simpson_moment(chi, 3, p, 4000)).epsilon(1e-8));
    const double b = fixed_window_fourth_moment_expanded(chi, 3, p).value;
    CHECK(std::abs(a - b) <= 1e-6 * a);
    const auto rep = bbbbb_check(chi, 4, p, SlackPolicy{});
    CHECK(rep.rel_diff < 1e-6);
    CHECK(rep.pass);
    const MomentParams v2{.V = 2, .t = 5, .alpha = 0, .A = 0, .B = 4};
    CHECK(fixed_window_fourth_moment(chi, 1, v2).value == doctest::Approx(12.0 * 4));
    CHECK_THROWS_AS(fixed_window_fourth_moment(chi, 5, p), std::invalid_argument);
    MomentParams wide = p;
    wide.B = 65;
    CHECK_THROWS_AS(fixed_window_fourth_moment(chi, 2, wide), std::invalid_argument);
    wide.enforce_interval = false;
    CHECK_NOTHROW(fixed_window_fourth_moment(chi, 2, wide));
}

TEST_CASE("max window moment dominates fixed windows") {
    const CharacterGroup g(29);
    const auto chi = g.character(7);
    const MomentParams p{.V = 8, .t = 40, .alpha = 0.0, .A = 0, .B = 8};
    const double mx = max_window_fourth_moment(chi, p).value;
    for (i64 C = 1; C <= window_span(8); ++C) CHECK(mx >= fixed_window_fourth_moment(chi, C, p).value * (1 - 1e-9));
    CHECK(max_window_check(chi, p, SlackPolicy{}).pass);
    const auto maj = dyadic_majorant_check(chi, p);
    CHECK(maj.holder_factor == 27.0);
    CHECK(maj.pass);
}

TEST_CASE("pointwise Holder step") {
    const CharacterGroup g(13);
    const MomentParams p{.V = 32, .t = 20, .alpha = 0.1, .A = 0, .B = 1};
    for (const auto& chi : g.characters())
        for (double x : {0.0, 3.7, 100.0}) {
            const auto h = holder_check(chi, 4, x, p);
            CHECK(h.cases == 16);
            CHECK(h.r_cubed_cases == 16);
            CHECK(h.pass());
        }
}
