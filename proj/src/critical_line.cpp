#include "critline/critical_line.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace critline::lfunc {

namespace {

// B_{2j} / (2j)!, j = 1..9
constexpr std::array<double, 9> kBernoulliOverFactorial = {
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40320.0,
    5.0 / 66.0 / 3628800.0,
    -691.0 / 2730.0 / 479001600.0,
    7.0 / 6.0 / 87178291200.0,
    -3617.0 / 510.0 / 20922789888000.0,
    43867.0 / 798.0 / 6402373705728000.0,
};

constexpr int kEulerMaclaurinTerms = 8;

struct Evaluation {
    cplx value;
    double remainder;
};

Evaluation evaluate(const DirichletCharacter& chi, cplx s, u64 X) {
    const u64 q = chi.modulus();
    cplx direct{};
    for (u64 n = 1; n <= X; ++n) {
        const cplx c = chi(static_cast<arith::i64>(n));
        if (c == cplx(0.0)) continue;
        direct += c * std::exp(-s * std::log(static_cast<double>(n)));
    }
    cplx tail{};
    double rem = 0.0;
    for (u64 a = 1; a <= q; ++a) {
        const cplx c = chi(static_cast<arith::i64>(a));
        if (c == cplx(0.0)) continue;
        double r = 0.0;
        tail += c * hurwitz_zeta_tail(s, static_cast<double>(X + a) / static_cast<double>(q), kEulerMaclaurinTerms, &r);
        rem += r;
    }
    const cplx qs = std::exp(-s * std::log(static_cast<double>(q)));
    return {direct + qs * tail, std::abs(qs) * rem};
}

}  // namespace

cplx hurwitz_zeta_tail(cplx s, double w, int terms, double* remainder) {
    if (terms < 0 || terms >= static_cast<int>(kBernoulliOverFactorial.size()))
        throw std::invalid_argument("hurwitz_zeta_tail: unsupported number of terms");
    const double lw = std::log(w);
    const cplx ws = std::exp(-s * lw);  // w^{-s}
    cplx sum = ws * w / (s - 1.0) + 0.5 * ws;
    // rising factorial s (s+1) ... (s+2j-2) times w^{-s-2j+1}
    cplx rising = s;
    cplx power = ws / w;
    for (int j = 1; j <= terms; ++j) {
        sum += kBernoulliOverFactorial[j - 1] * rising * power;
        rising *= (s + cplx(2.0 * j - 1)) * (s + cplx(2.0 * j));
        power /= w * w;
    }
    if (remainder) {
        const cplx next = kBernoulliOverFactorial[terms] * rising * power;
        // The remainder is at most |s + 2m + 1| / Re(s + 2m + 1) times the next term.
        const double sigma = s.real() + 2.0 * terms + 1.0;
        *remainder = std::abs(next) * std::abs(s + cplx(2.0 * terms + 1.0)) / sigma;
    }
    return sum;
}

LValue l_critical_line(const DirichletCharacter& chi, double t, double accuracy, u64 term_budget) {
    if (chi.is_principal()) throw std::invalid_argument("l_critical_line: character must be nonprincipal");
    if (!(accuracy > 0.0)) throw std::invalid_argument("l_critical_line: accuracy must be positive");
    const cplx s(0.5, t);
    const u64 q = chi.modulus();
    double c = std::max(10.0, 2.0 * std::abs(s));
    while (true) {
        const u64 X = q * static_cast<u64>(std::ceil(c));
        if (2 * X > term_budget)
            throw TermBudgetExceeded("l_critical_line: accuracy needs more than " + std::to_string(term_budget) +
                                     " terms");
        const Evaluation a = evaluate(chi, s, X);
        const Evaluation b = evaluate(chi, s, 2 * X);
        const double err = std::abs(a.value - b.value) + b.remainder;
        if (err <= accuracy) return {b.value, err, 2 * X};
        c *= 2.0;
    }
}

}  // namespace critline::lfunc
