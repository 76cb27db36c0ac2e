#include <doctest.h>

#include <cmath>
#include <vector>

#include "critline/critical_line.hpp"

using namespace critline;
using namespace critline::lfunc;
using arith::CharacterGroup;

namespace {

// sum (-1)^k (2k+1)^{-s} by repeated averaging of consecutive partial sums.
cplx alternating_oracle(double t) {
    const cplx s(0.5, t);
    const int K = 200000, depth = 40;
    cplx partial{};
    for (int k = 0; k < K; ++k) partial += (k % 2 ? -1.0 : 1.0) * std::pow(cplx(2.0 * k + 1), -s);
    std::vector<cplx> row;
    for (int j = 0; j <= depth; ++j) {
        row.push_back(partial);
        const int k = K + j;
        partial += (k % 2 ? -1.0 : 1.0) * std::pow(cplx(2.0 * k + 1), -s);
    }
    for (int d = 0; d < depth; ++d)
        for (std::size_t i = 0; i + 1 < row.size() - d; ++i) row[i] = 0.5 * (row[i] + row[i + 1]);
    return row[0];
}

}  // namespace

TEST_CASE("Hurwitz tail against a direct sum") {
    const cplx s(0.5, 3.0);
    // zeta(s, w) - zeta(s, w + 50) = sum_{k<50} (w + k)^{-s}
    double rem = 0;
    const cplx a = hurwitz_zeta_tail(s, 40.0, 8, &rem);
    const cplx b = hurwitz_zeta_tail(s, 90.0, 8);
    cplx direct{};
    for (int k = 0; k < 50; ++k) direct += std::pow(cplx(40.0 + k), -s);
    CHECK(std::abs((a - b) - direct) < 1e-12);
    CHECK(rem < 1e-10);
}

TEST_CASE("quadratic character mod 4") {
    const auto chi = CharacterGroup(4).character(1);
    REQUIRE(chi.order() == 2);
    const auto v0 = l_critical_line(chi, 0.0, 1e-12);
    CHECK(std::abs(v0.value - cplx(0.667691457189608, 0)) < 1e-12);
    for (double t : {0.0, 1.0, 20.0}) {
        const auto v = l_critical_line(chi, t, 1e-11);
        CHECK(std::abs(v.value - alternating_oracle(t)) < 1e-9);
        CHECK(v.error_estimate <= 1e-11);
        CHECK(v.cutoff % 4 == 0);
    }
    const auto v20 = l_critical_line(chi, 20.0, 1e-12);
    CHECK(std::abs(v20.value - cplx(2.851065154483341, -0.364836579084911)) < 1e-11);
}

TEST_CASE("conjugation symmetry") {
    const CharacterGroup g(7);
    for (const auto& chi : g.characters()) {
        if (chi.is_principal()) continue;
        const auto a = l_critical_line(chi, 5.0, 1e-11).value;
        const auto b = l_critical_line(chi.conj(), -5.0, 1e-11).value;
        CHECK(std::abs(a - std::conj(b)) < 1e-9);
    }
}

TEST_CASE("guards") {
    CHECK_THROWS_AS(l_critical_line(CharacterGroup(7).character(0), 1.0, 1e-8), std::invalid_argument);
    CHECK_THROWS_AS(l_critical_line(CharacterGroup(7).character(1), 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(l_critical_line(CharacterGroup(7).character(1), 1.0, 1e-12, 64), TermBudgetExceeded);
}
