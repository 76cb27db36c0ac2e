#pragma once

// Amplification of sum_{M<n<=M+N} chi(n) n^{it}: the tent weight and its
// Fourier kernel, the (U, V) shifts n + uv, congruence counts, the partition
// of (n, u) by n/u into intervals of length 1/H, the W functional with its
// chain of inequalities, and the exponent scan against (qt)^{3/16}.

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "critline/characters.hpp"
#include "critline/slack.hpp"

namespace critline::amplify {

using arith::DirichletCharacter;
using arith::i64;
using arith::u64;
using cplx = std::complex<double>;

struct AmplificationConfig {
    u64 q = 1;
    double t = 1.0;
    i64 M = 0, N = 1;
    i64 U = 1, V = 1;
    double H = 1.0;  // t / V
    std::vector<i64> setU;  // U/2 < u <= U, gcd(u, q) = 1
    std::vector<i64> setV;  // V/2 < v <= V
    std::vector<std::string> violations;  // hypotheses that fail
    bool permissive = false;

    bool hypotheses_hold() const { return violations.empty(); }

    /// U = floor(N (qt)^{-1/4}), V = floor((qt)^{1/4}) computed exactly for
    /// integer inputs. Throws std::invalid_argument on a hypothesis violation
    /// unless `permissive`, in which case the violations are recorded.
    static AmplificationConfig make(u64 q, double t, i64 M, i64 N, bool permissive = false);
};

/// Largest integer k >= 0 with k^4 <= x.
i64 floor_fourth_root(long double x);

enum class TentConvention {
    Literal,  // min(x-M, 1, M+N-x) on [M, M+N]
    Shifted   // min(x-M, 1, M+N+1-x) on [M, M+N+1]: equal to 1 at every integer in (M, M+N]
};

double tent_weight(double x, i64 M, i64 N, TentConvention conv = TentConvention::Literal);

/// |g(y)| for the Fourier transform g of the tent (independent of M).
double tent_transform_abs(double y, i64 N, TentConvention conv);

/// Exact value of int min(N, 1/|y|, U/y^2) dy = 2 (2 + ln N + ln U) for NU >= 1.
double kernel_integral(double N, double U);

struct KernelReport {
    std::size_t samples = 0;
    std::size_t failures = 0;
    double worst_ratio = 0.0;   // max (1/u)|g(y/u)| / min(N, 1/|y|, U/y^2)
    double kernel_integral = 0.0;
    double log_bound = 0.0;     // C_log (1 + ln N + ln U)
    bool integral_pass = false;
    bool pass = false;
};

KernelReport fourier_kernel_check(i64 N, i64 U, const std::vector<double>& ySamples, const SlackPolicy& slack,
                                  TentConvention conv = TentConvention::Shifted);

struct CongruenceReport {
    u64 q = 0;
    i64 M = 0, N = 0, U = 0;
    u64 count = 0;
    double bound_core = 0.0;  // NU (NU/q + 1)
    double ratio = 0.0;
    double slack = 0.0;
    bool pass = false;
};

/// #{n1 u1 = n2 u2 mod q : n_i in (n_lo, n_hi], u_i in us} by a residue histogram.
u64 congruence_count(u64 q, i64 n_lo, i64 n_hi, const std::vector<i64>& us);
/// Same count by direct enumeration of all quadruples.
u64 congruence_count_brute(u64 q, i64 n_lo, i64 n_hi, const std::vector<i64>& us);

/// Units 1 <= u <= U with gcd(u, q) = 1 and n in (M, M + N].
CongruenceReport count_congruence_products(i64 M, i64 N, i64 U, u64 q, const SlackPolicy& slack);

struct OmegaPartition {
    i64 h_min = 0, h_max = -1;
    // h -> (lambda -> I_h(lambda)), lambda in [0, q)
    std::map<i64, std::map<u64, u64>> counts;
    u64 total_pairs = 0;        // sum_h sum_lambda I_h(lambda)
    u64 expected_pairs = 0;     // 2N #setU
    u64 sum_squares = 0;        // sum_h sum_lambda I_h(lambda)^2
    u64 full_congruence = 0;    // congruence count over the same (n, u) ranges, any h
    double h_bound = 0.0;       // 6 H N / U
    bool h_range_ok = false;    // 0 <= h_min and h_max <= 6HN/U
};

/// n in (M - N, M + N], u in setU; h = floor(H n / u).
OmegaPartition build_omega_partition(const AmplificationConfig& cfg);

cplx twisted_partial_sum(const DirichletCharacter& chi, i64 M, i64 N, double t);

/// t = 0 sum over (M, M + N] as an exact root-of-unity sum.
arith::RootOfUnitySum character_sum_exact(const DirichletCharacter& chi, i64 M, i64 N);

/// W = sum_n sum_{u in U} | sum_{v in V} chi(n u* + v) (n/u + v)^{it} e(v alpha) |, n in (M-N, M+N].
double w_functional(const AmplificationConfig& cfg, const DirichletCharacter& chi, double alpha);

struct AlphaChoice {
    double alpha = 0.0;
    double w = 0.0;
};

/// Grid maximum of W over `points` equally spaced alpha in [0, 1); W has period 1 in alpha.
AlphaChoice maximize_w(const AmplificationConfig& cfg, const DirichletCharacter& chi, int points = 1024);

struct GPrimeReport {
    double g_prime = 0.0;       // |G'(lambda, x)|
    double max_partial = 0.0;   // max_Q |sum_{V/2 < v <= Q} ...|
    double rigorous_rhs = 0.0;  // t / (x + v_min) * max_partial
    double literal_rhs = 0.0;   // t / V * max_partial
    bool pass = false;          // rigorous form
    bool literal_pass = false;
};

GPrimeReport g_partial_summation_check(const DirichletCharacter& chi, u64 lambda, double x, i64 V, double t,
                                       double alpha);

struct ChainReport {
    u64 q = 0;
    u64 char_index = 0;
    double t = 0.0;
    i64 M = 0, N = 0, U = 0, V = 0;
    double H = 0.0;
    std::size_t nU = 0, nV = 0;

    double lhs = 0.0;                // |sum_{M<n<=M+N} chi(n) n^{it}|
    double tent_literal = 0.0;       // |sum f(n) chi(n) n^{it}|, literal tent
    double tent_shifted = 0.0;       // same with the shifted tent
    bool tent_literal_exact = false;
    bool tent_shifted_exact = false;
    double amplified = 0.0;          // |(1/#U#V) sum_n sum_u sum_v f(n+uv) chi(n+uv) (n+uv)^{it}|
    bool amplified_exact = false;

    double alpha = 0.0;
    double W = 0.0;
    double kernel = 0.0;
    double amplification_rhs = 0.0;  // C_f kernel W / (#U #V)
    bool amplification_pass = false;

    std::size_t sg_cases = 0, sg_failures = 0;  // pointwise Sobolev-Gallagher on each I_h
    double w_sg_rhs = 0.0;                       // sum I_h(l) (H J1 + 4 J2)^{1/4}
    bool w_sg_pass = false;
    std::size_t holder_cases = 0, holder_failures = 0;   // J2 <= J1^{3/4} (int |G'|^4)^{1/4}
    std::size_t gprime_cases = 0, gprime_failures = 0;   // rigorous partial summation
    std::size_t gprime_literal_failures = 0;             // with t/V in place of t/(x + v_min)

    u64 sum_I = 0, sum_I2 = 0;
    double b1_core = 0.0;  // NU
    bool b1_exact = false;  // sum_I = 2N #U
    double b2_core = 0.0;   // NU (NU/q + 1)
    double b2_ratio = 0.0;
    bool b2_pass = false;
    double sum_max_moment = 0.0;   // sum over occupied (h, lambda) of int_{I_h} max_Q |...|^4
    double chain_rhs = 0.0;        // 9 (t/V) sum_I^2 sum_I2 sum_max_moment
    bool chain_pass = false;       // W^4 <= chain_rhs
    double lemma10_lhs = 0.0;      // sum_lambda int_0^B max_Q |...|^4, B = (h_max + 1)/H
    double lemma10_core = 0.0;     // q V^3 + q^{1/2} V^5 / t^{1/2}
    double lemma10_ratio = 0.0;
    bool lemma10_pass = false;
    double interval_over_v = 0.0;  // B / V

    bool pass() const {
        return tent_shifted_exact && amplified_exact && amplification_pass && sg_failures == 0 && w_sg_pass &&
               holder_failures == 0 && gprime_failures == 0 && b1_exact && b2_pass && chain_pass && lemma10_pass;
    }
};

/// Evaluates every displayed step from the partial sum to the max-window
/// moment for one (cfg, chi); Ω_h integrals use quadrature.
ChainReport amplification_chain(const AmplificationConfig& cfg, const DirichletCharacter& chi,
                                const SlackPolicy& slack);

struct Theorem1Report {
    u64 q = 0;
    u64 char_index = 0;
    double t = 0.0;
    i64 M = 0, N = 0, U = 0, V = 0;
    double lhs = 0.0;
    double core = 0.0;  // N^{1/2} (qt)^{3/16}
    double ratio = 0.0;
    double slack = 0.0;
    bool hypotheses = true;
    bool pass = false;
};

Theorem1Report theorem1_check(u64 q, double t, i64 N, i64 M, const DirichletCharacter& chi, const SlackPolicy& slack,
                              bool permissive = false);

/// Integer range of N allowed by the hypotheses: [ceil((qt)^{1/4}), floor(q^{5/8} t^{1/8})].
std::pair<i64, i64> theorem1_n_range(u64 q, double t);
/// Rounded geometric midpoint of theorem1_n_range.
i64 theorem1_mid_n(u64 q, double t);

struct ScanCase {
    u64 q = 0;
    double t = 0.0;
    i64 N = 0;
    i64 best_M = 0;
    u64 best_char = 0;
    double max_normalized = 0.0;  // max over chi, M of |S| / N^{1/2}
    double residual = 0.0;
};

struct ScanResult {
    std::vector<ScanCase> cases;
    double slope = 0.0;
    double intercept = 0.0;
    double decades = 0.0;
};

inline constexpr double kMinScanDecades = 1.45;

/// For each (q, t): N = theorem1_mid_n, M at `m_samples` equally spaced
/// integers in [N, 2N], all primitive chi. Least-squares slope of
/// log max|S|/N^{1/2} against log qt. Throws std::invalid_argument when the
/// family spans fewer than `min_decades` decades of qt.
ScanResult exponent_scan(const std::vector<std::pair<u64, double>>& family, int m_samples,
                         double min_decades = kMinScanDecades);

}  // namespace critline::amplify
