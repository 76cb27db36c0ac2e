#pragma once

// L(1/2 + it, chi) for nonprincipal chi.
//
// With X a multiple of q,
//   L(s, chi) = sum_{n <= X} chi(n) n^{-s} + q^{-s} sum_{a=1}^{q} chi(a) zeta(s, (X + a)/q)
// and each Hurwitz zeta value comes from Euler-Maclaurin at a large second
// argument. The result is accepted when a run at twice the cutoff agrees.

#include <complex>
#include <cstdint>
#include <stdexcept>

#include "critline/characters.hpp"

namespace critline::lfunc {

using arith::DirichletCharacter;
using arith::u64;
using cplx = std::complex<double>;

class TermBudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct LValue {
    cplx value{};
    double error_estimate = 0.0;  // |difference to the doubled cutoff| + tail remainder
    u64 cutoff = 0;               // X
};

/// Euler-Maclaurin value of zeta(s, w) for w >= 2|s|, with `terms` Bernoulli
/// corrections; `remainder` receives the size of the first omitted term.
cplx hurwitz_zeta_tail(cplx s, double w, int terms, double* remainder = nullptr);

LValue l_critical_line(const DirichletCharacter& chi, double t, double accuracy, u64 term_budget = u64{1} << 26);

}  // namespace critline::lfunc
