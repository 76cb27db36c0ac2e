#include <doctest.h>

#include <cmath>
#include <numbers>

#include "critline/amplify.hpp"

using namespace critline;
using namespace critline::amplify;
using arith::CharacterGroup;

namespace {

constexpr double kPi = std::numbers::pi;

double numeric_transform(double y, i64 N, TentConvention conv) {
    const double top = static_cast<double>(N) + (conv == TentConvention::Shifted ? 1.0 : 0.0);
    const int n = 200000;
    const double h = top / n;
    cplx s{};
    for (int i = 0; i <= n; ++i) {
        const double x = i * h;
        const double w = (i == 0 || i == n) ? 1 : (i % 2 ? 4 : 2);
        s += w * tent_weight(x, 0, N, conv) * std::exp(cplx(0, -2 * kPi * x * y));
    }
    return std::abs(s * h / 3.0);
}

std::complex<long double> long_double_sum(const DirichletCharacter& chi, i64 M, i64 N, double t) {
    std::complex<long double> s{};
    for (i64 n = M + 1; n <= M + N; ++n) {
        const auto c = chi(n);
        const long double ph = static_cast<long double>(t) * std::log(static_cast<long double>(n));
        s += std::complex<long double>(c.real(), c.imag()) * std::complex<long double>(std::cos(ph), std::sin(ph));
    }
    return s;
}

}  // namespace

TEST_CASE("fourth roots") {
    CHECK(floor_fourth_root(0) == 0);
    CHECK(floor_fourth_root(15) == 1);
    CHECK(floor_fourth_root(16) == 2);
    CHECK(floor_fourth_root(808) == 5);
    CHECK(floor_fourth_root(1e16L) == 10000);
    CHECK(floor_fourth_root(1e16L - 1) == 9999);
}

TEST_CASE("configuration") {
    const auto c = AmplificationConfig::make(101, 8, 12, 12);
    CHECK(c.V == 5);
    CHECK(c.U == 2);
    CHECK(c.H == doctest::Approx(8.0 / 5));
    CHECK(c.setU == std::vector<i64>{2});
    CHECK(c.setV == std::vector<i64>{3, 4, 5});
    CHECK(c.hypotheses_hold());
    CHECK_THROWS_AS(AmplificationConfig::make(101, 8, 5, 12), std::invalid_argument);
    CHECK_THROWS_AS(AmplificationConfig::make(101, 8, 30, 12), std::invalid_argument);
    const auto p = AmplificationConfig::make(101, 8, 30, 12, true);
    CHECK(p.violations == std::vector<std::string>{"M <= 2N"});
    CHECK_THROWS_AS(AmplificationConfig::make(101, 8, 5, 5, true), std::invalid_argument);
    const auto r = theorem1_n_range(101, 8);
    CHECK(r.first == 6);
    CHECK(r.second == 23);
    CHECK(theorem1_mid_n(101, 8) == 12);
}

TEST_CASE("tent weights and transforms") {
    for (i64 n = 11; n <= 20; ++n) CHECK(tent_weight(n, 10, 10, TentConvention::Shifted) == 1.0);
    CHECK(tent_weight(20, 10, 10, TentConvention::Literal) == 0.0);
    CHECK(tent_weight(10.5, 10, 10, TentConvention::Literal) == 0.5);
    CHECK(tent_weight(9, 10, 10) == 0.0);
    for (auto conv : {TentConvention::Literal, TentConvention::Shifted})
        for (i64 N : {1, 2, 7})
            for (double y : {0.0, 0.01, 0.3, 1.7, 5.25})
                CHECK(std::abs(tent_transform_abs(y, N, conv) - numeric_transform(y, N, conv)) < 1e-8);
}

TEST_CASE("kernel integral") {
    for (auto [N, U] : {std::pair{1.0, 1.0}, {8.0, 4.0}, {64.0, 16.0}}) {
        // min(N, 1/y, U/y^2) on y > 0: breakpoints 1/N and U
        const double a = 1 / N, b = U;
        const double direct = N * a + std::log(b / a) + U / b;
        CHECK(kernel_integral(N, U) == doctest::Approx(2 * direct));
    }
    CHECK_THROWS_AS(kernel_integral(0.5, 1), std::invalid_argument);
    std::vector<double> ys;
    for (int k = -400; k <= 400; ++k) ys.push_back(k * 0.037);
    const auto k = fourier_kernel_check(8, 4, ys, SlackPolicy{});
    CHECK(k.samples > 0);
    CHECK(k.integral_pass);
}

TEST_CASE("congruence counts") {
    for (u64 q : {7u, 30u, 97u})
        for (i64 N : {1, 5, 40}) {
            // U = 1: pairs n1 = n2 mod q
            u64 expect = 0;
            for (i64 a = 1; a <= N; ++a)
                for (i64 b = 1; b <= N; ++b) expect += (a - b) % static_cast<i64>(q) == 0;
            CHECK(count_congruence_products(0, N, 1, q, SlackPolicy{}).count == expect);
        }
    // N = 1 with n a unit: only u1 = u2
    CHECK(count_congruence_products(3, 1, 6, 97, SlackPolicy{}).count == 6);
    // n = 0 mod q: every pair
    CHECK(count_congruence_products(18, 1, 16, 19, SlackPolicy{}).count == 256);
    for (u64 q : {1u, 6u, 13u, 64u})
        for (i64 lo : {0, 17})
            for (i64 N : {1, 9}) {
                std::vector<i64> us;
                for (i64 u = 1; u <= 7; ++u)
                    if (std::gcd(static_cast<u64>(u), q) == 1) us.push_back(u);
                CHECK(congruence_count(q, lo, lo + N, us) == congruence_count_brute(q, lo, lo + N, us));
            }
}

TEST_CASE("partition of (n, u) pairs") {
    for (auto [q, t, M] : {std::tuple{101ull, 8.0, 12}, {101ull, 8.0, 24}, {53ull, 2.0, 9}}) {
        const i64 N = theorem1_mid_n(q, t);
        const auto cfg = AmplificationConfig::make(q, t, std::max<i64>(M, N), N);
        const auto om = build_omega_partition(cfg);
        CHECK(om.total_pairs == om.expected_pairs);
        CHECK(om.h_range_ok);
        CHECK(om.sum_squares <= om.full_congruence);
        u64 tot = 0;
        for (const auto& [h, row] : om.counts)
            for (const auto& [l, c] : row) {
                CHECK(l < q);
                tot += c;
            }
        CHECK(tot == om.total_pairs);
    }
}

TEST_CASE("partial sums") {
    const CharacterGroup g(13);
    const auto chi = g.character(4);
    CHECK(std::abs(twisted_partial_sum(chi, 6, 1, 3.0) - chi(7) * std::polar(1.0, 3.0 * std::log(7.0))) < 1e-15);
    CHECK(twisted_partial_sum(chi, 6, 0, 3.0) == cplx(0, 0));
    CHECK_THROWS_AS(twisted_partial_sum(chi, -1, 5, 3.0), std::invalid_argument);
    for (const auto& c : g.characters()) {
        const auto s = character_sum_exact(c, 40, 13);
        CHECK(s.is_zero() == !c.is_principal());
    }
    for (i64 N : {500, 30000}) {
        const auto ref = long_double_sum(chi, 1000, N, 17.0);
        const auto got = twisted_partial_sum(chi, 1000, N, 17.0);
        CHECK(std::abs(got - cplx(static_cast<double>(ref.real()), static_cast<double>(ref.imag()))) < 1e-9);
    }
}

TEST_CASE("W functional") {
    const auto cfg = AmplificationConfig::make(3, 4, 3, 2);
    REQUIRE(cfg.U == 1);
    REQUIRE(cfg.V == 1);
    const CharacterGroup g(3);
    const auto chi = g.character(1);
    int units = 0;
    for (i64 n = cfg.M - cfg.N + 1; n <= cfg.M + cfg.N; ++n) units += (n + 1) % 3 != 0;
    CHECK(w_functional(cfg, chi, 0.37) == doctest::Approx(units));
    const auto cfg2 = AmplificationConfig::make(101, 8, 12, 12);
    const auto chi2 = CharacterGroup(101).character(17);
    CHECK(w_functional(cfg2, chi2, 0.25) == doctest::Approx(w_functional(cfg2, chi2, 1.25)));
    const auto best = maximize_w(cfg2, chi2, 64);
    for (int k = 0; k < 64; ++k) CHECK(w_functional(cfg2, chi2, k / 64.0) <= best.w * (1 + 1e-12));
}

TEST_CASE("partial summation for G'") {
    const auto chi = CharacterGroup(29).character(3);
    for (double x : {0.0, 1.5, 20.0})
        for (double t : {5.0, 60.0}) {
            const auto r = g_partial_summation_check(chi, 7, x, 8, t, 0.2);
            CHECK(r.pass);
        }
    CHECK_THROWS_AS(g_partial_summation_check(chi, 7, -1, 8, 5, 0), std::invalid_argument);
}

TEST_CASE("amplification chain and main bound") {
    const SlackPolicy slack;
    const auto cfg = AmplificationConfig::make(53, 2, 8, 8);
    const auto prim = CharacterGroup(53).primitive_characters();
    const auto rep = amplification_chain(cfg, prim[5], slack);
    CHECK(rep.tent_shifted_exact);
    CHECK(rep.amplified_exact);
    CHECK(rep.b1_exact);
    CHECK(rep.pass());
    const auto t1 = theorem1_check(53, 2, 8, 8, prim[5], slack);
    CHECK(t1.pass);
    CHECK(t1.core == doctest::Approx(std::sqrt(8.0) * std::pow(106.0, 3.0 / 16)));
    CHECK_THROWS_AS(theorem1_check(53, 2, 8, 8, CharacterGroup(53).character(0), slack), std::invalid_argument);
    CHECK_THROWS_AS(theorem1_check(53, 2, 8, 8, CharacterGroup(7).primitive_characters()[0], slack),
                    std::invalid_argument);
}

TEST_CASE("exponent scan guards") {
    CHECK_THROWS_AS(exponent_scan({{53, 2}, {53, 2}}, 2), std::invalid_argument);
    CHECK_THROWS_AS(exponent_scan({{53, 2}}, 2), std::invalid_argument);
    const auto r = exponent_scan({{53, 2}, {101, 32}, {1009, 64}}, 2, 1.0);
    CHECK(r.cases.size() == 3);
    for (const auto& c : r.cases) CHECK(c.max_normalized > 0);
}
