#pragma once

// Fourth-moment mean values of short twisted character sums
//   H_{lambda,x}(C, D) = sum_{D < v <= D+C} chi(lambda+v) (x+v)^{it} e(alpha v)
// over lambda mod q and x in [A, B], and the binary-expansion maximal
// decomposition used to pass from fixed windows to the max over Q.

#include <complex>
#include <cstdint>
#include <vector>

#include "critline/characters.hpp"
#include "critline/quadrature.hpp"
#include "critline/slack.hpp"

namespace critline::meanvalue {

using arith::DirichletCharacter;
using arith::i64;
using arith::u64;
using quad::cplx;

cplx window_sum(const DirichletCharacter& chi, u64 lambda, double x, double t, double alpha, i64 D, i64 C);

struct DyadicBlock {
    i64 size;    // 2^r
    i64 offset;  // s(r) 2^r, relative to the window start
    int r;
};

struct DyadicDecomposition {
    i64 Q = 0;
    i64 V = 0;
    int R = 0;                 // largest R with 2^R <= V
    std::vector<int> digits;   // delta(r), r = 0..R
    std::vector<i64> s;        // s(r) = sum_{r<t<=R} delta(t) 2^{t-r}
    std::vector<DyadicBlock> blocks;  // descending r, only delta(r) = 1
};

/// Requires 1 <= Q <= V.
DyadicDecomposition dyadic_decompose(i64 Q, i64 V);

/// Number of blocks (r, s) with r <= R, 0 <= s < 2^{R-r}, weighted by 2^r:
/// equals (R + 1) 2^R.
i64 dyadic_block_mass(int R);

struct MomentParams {
    i64 V = 8;
    double t = 1.0;
    double alpha = 0.0;
    double A = 0.0, B = 1.0;
    double rel_tol = 1e-9;
    // Reject B > 8V. The amplification chain integrates up to 6N/U + 1/H and
    // may switch this off.
    bool enforce_interval = true;
};

/// Window start: v runs over integers in (V/2, V/2 + C], i.e. D = floor(V/2).
inline i64 window_start(i64 V) { return V / 2; }
/// Longest window inside (V/2, V].
inline i64 window_span(i64 V) { return V - V / 2; }

struct MomentValue {
    double value = 0.0;
    double error_estimate = 0.0;
    std::size_t panels = 0;
};

/// int_A^B sum_lambda |H(C, V/2)|^4 dx, lambda-summed integrand.
MomentValue fixed_window_fourth_moment(const DirichletCharacter& chi, i64 C, const MomentParams& p);

/// Same moment from the quadruple expansion: sum over (v1..v4) in the window
/// of the complete character sum times int F^{it} e(alpha (v1+v2-v3-v4)) dx.
MomentValue fixed_window_fourth_moment_expanded(const DirichletCharacter& chi, i64 C, const MomentParams& p);

struct MomentReport {
    u64 q = 0;
    u64 char_index = 0;
    i64 V = 0;
    i64 C = -1;  // -1 for the max-over-Q moment
    double t = 0.0, alpha = 0.0;
    double lhs = 0.0;
    double lhs_expanded = 0.0;  // fixed windows only
    double rel_diff = 0.0;
    double core = 0.0;
    double ratio = 0.0;
    double slack = 0.0;
    bool pass = false;
};

/// Fixed window against C (q V^2 + q^{1/2} V^4 / t^{1/2}) with slack C0 (qV)^eps.
MomentReport bbbbb_check(const DirichletCharacter& chi, i64 C, const MomentParams& p, const SlackPolicy& slack,
                         bool with_expanded = true);

/// int_A^B sum_lambda max_{1 <= Q <= span} |H(Q, V/2)|^4 dx with the max
/// taken at each quadrature node.
MomentValue max_window_fourth_moment(const DirichletCharacter& chi, const MomentParams& p);

/// Max-window moment against q V^3 + q^{1/2} V^5 / t^{1/2}.
MomentReport max_window_check(const DirichletCharacter& chi, const MomentParams& p, const SlackPolicy& slack);

struct MajorantReport {
    double lhs = 0.0;         // max-window moment on the shared plan
    double block_sum = 0.0;   // sum over (r, s) of block moments on the same plan
    double holder_factor = 0.0;  // max(1, R)^3
    bool pass = false;        // lhs <= holder_factor * block_sum
};

MajorantReport dyadic_majorant_check(const DirichletCharacter& chi, const MomentParams& p);

struct HolderReport {
    int cases = 0;
    int failures = 0;
    int r_cubed_cases = 0;  // Q <= V/2, where the R^3 form is also checked
    int r_cubed_failures = 0;
    double worst_ratio = 0.0;
    bool pass() const { return failures == 0 && r_cubed_failures == 0; }
};

/// Pointwise |H(Q, V/2)|^4 <= k^3 sum_{delta(r)=1} |H(2^r, V/2 + s(r) 2^r)|^4,
/// k = number of binary digits of Q, for every 1 <= Q <= span at (lambda, x).
HolderReport holder_check(const DirichletCharacter& chi, u64 lambda, double x, const MomentParams& p);

}  // namespace critline::meanvalue
