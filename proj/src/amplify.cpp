#include "critline/amplify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "critline/meanvalue.hpp"
#include "critline/quadrature.hpp"

namespace critline::amplify {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

long double pow4l(long double x) { return (x * x) * (x * x); }

// Neumaier's variant of Kahan summation.
struct CompensatedSum {
    double sum = 0.0, comp = 0.0;
    void add(double x) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

double sinc_factor(double len, double y) { return std::abs(std::sin(kPi * len * y) / (kPi * y)); }

}  // namespace

i64 floor_fourth_root(long double x) {
    if (x < 1) return 0;
    i64 k = static_cast<i64>(std::floor(std::pow(x, 0.25L)));
    while (pow4l(static_cast<long double>(k + 1)) <= x) ++k;
    while (k > 0 && pow4l(static_cast<long double>(k)) > x) --k;
    return k;
}

AmplificationConfig AmplificationConfig::make(u64 q, double t, i64 M, i64 N, bool permissive) {
    if (q < 1 || N < 1) throw std::invalid_argument("AmplificationConfig: q and N must be positive");
    if (M < N) throw std::invalid_argument("AmplificationConfig: M >= N is required so that n + uv >= 1");
    AmplificationConfig c;
    c.q = q;
    c.t = t;
    c.M = M;
    c.N = N;
    c.permissive = permissive;
    const long double qt = static_cast<long double>(q) * t;
    const long double n4 = pow4l(static_cast<long double>(N));
    c.V = floor_fourth_root(qt);
    // Largest U with U^4 qt <= N^4.
    i64 U = static_cast<i64>(std::floor(static_cast<long double>(N) / std::pow(qt, 0.25L)));
    while (pow4l(static_cast<long double>(U + 1)) * qt <= n4) ++U;
    while (U > 0 && pow4l(static_cast<long double>(U)) * qt > n4) --U;
    c.U = U;
    c.H = c.V > 0 ? t / static_cast<double>(c.V) : 0.0;

    if (!(t >= 1.0)) c.violations.push_back("t >= 1");
    if (n4 < qt) c.violations.push_back("N >= (qt)^{1/4}");
    const long double n8 = n4 * n4;
    if (n8 > std::pow(static_cast<long double>(q), 5) * t) c.violations.push_back("N <= q^{5/8} t^{1/8}");
    if (M > 2 * N) c.violations.push_back("M <= 2N");
    if (c.U < 1) c.violations.push_back("U >= 1");
    if (c.V < 1) c.violations.push_back("V >= 1");
    if (c.U * c.V > N) c.violations.push_back("UV <= N");

    for (i64 u = c.U / 2 + 1; u <= c.U; ++u)
        if (std::gcd(static_cast<u64>(u), q) == 1) c.setU.push_back(u);
    for (i64 v = c.V / 2 + 1; v <= c.V; ++v) c.setV.push_back(v);
    if (c.U >= 1 && c.setU.empty()) c.violations.push_back("setU nonempty");

    if (!c.violations.empty() && !permissive) {
        std::string msg = "AmplificationConfig: hypothesis violated:";
        for (const auto& v : c.violations) msg += " [" + v + "]";
        throw std::invalid_argument(msg);
    }
    if (c.setU.empty() || c.setV.empty())
        throw std::invalid_argument("AmplificationConfig: empty U or V set even in permissive mode");
    return c;
}

double tent_weight(double x, i64 M, i64 N, TentConvention conv) {
    const double m = static_cast<double>(M);
    const double top = static_cast<double>(M + N) + (conv == TentConvention::Shifted ? 1.0 : 0.0);
    if (x < m || x > top) return 0.0;
    return std::min({x - m, 1.0, top - x});
}

double tent_transform_abs(double y, i64 N, TentConvention conv) {
    if (N < 1) return 0.0;
    if (conv == TentConvention::Shifted) {
        if (y == 0.0) return static_cast<double>(N);
        return sinc_factor(static_cast<double>(N), y) * sinc_factor(1.0, y);
    }
    if (N == 1) {
        // Triangle of base 1 and height 1/2.
        if (y == 0.0) return 0.25;
        const double s = sinc_factor(0.5, y);
        return s * s;
    }
    if (y == 0.0) return static_cast<double>(N - 1);
    return sinc_factor(static_cast<double>(N - 1), y) * sinc_factor(1.0, y);
}

double kernel_integral(double N, double U) {
    if (N * U < 1.0) throw std::invalid_argument("kernel_integral: needs NU >= 1");
    return 2.0 * (2.0 + std::log(N) + std::log(U));
}

KernelReport fourier_kernel_check(i64 N, i64 U, const std::vector<double>& ySamples, const SlackPolicy& slack,
                                  TentConvention conv) {
    if (U < 1) throw std::invalid_argument("fourier_kernel_check: U must be at least 1");
    KernelReport r;
    const double dN = static_cast<double>(N), dU = static_cast<double>(U);
    r.pass = true;
    for (i64 u = U / 2 + 1; u <= U; ++u) {
        const double du = static_cast<double>(u);
        for (double y : ySamples) {
            const double lhs = tent_transform_abs(y / du, N, conv) / du;
            const double ay = std::abs(y);
            const double rhs = ay == 0.0 ? dN : std::min({dN, 1.0 / ay, dU / (ay * ay)});
            const double ratio = lhs / rhs;
            ++r.samples;
            r.worst_ratio = std::max(r.worst_ratio, ratio);
            if (ratio > slack.c_fourier * (1.0 + 1e-12)) {
                ++r.failures;
                r.pass = false;
            }
        }
    }
    r.kernel_integral = kernel_integral(dN, dU);
    r.log_bound = slack.c_log * (1.0 + std::log(dN) + std::log(dU));
    r.integral_pass = r.kernel_integral <= r.log_bound;
    r.pass = r.pass && r.integral_pass;
    return r;
}

u64 congruence_count(u64 q, i64 n_lo, i64 n_hi, const std::vector<i64>& us) {
    std::vector<u64> hist(q, 0);
    for (i64 n = n_lo + 1; n <= n_hi; ++n)
        for (i64 u : us) ++hist[arith::mulmod(arith::reduce(n, q), arith::reduce(u, q), q)];
    u64 total = 0;
    for (u64 c : hist) total += c * c;
    return total;
}

u64 congruence_count_brute(u64 q, i64 n_lo, i64 n_hi, const std::vector<i64>& us) {
    u64 total = 0;
    for (i64 n1 = n_lo + 1; n1 <= n_hi; ++n1)
        for (i64 u1 : us)
            for (i64 n2 = n_lo + 1; n2 <= n_hi; ++n2)
                for (i64 u2 : us)
                    if (arith::reduce(static_cast<i64>(static_cast<__int128>(n1) * u1 - static_cast<__int128>(n2) * u2 %
                                                                                           static_cast<__int128>(q)),
                                      q) == 0)
                        ++total;
    return total;
}

CongruenceReport count_congruence_products(i64 M, i64 N, i64 U, u64 q, const SlackPolicy& slack) {
    if (N < 1 || U < 1 || q < 1) throw std::invalid_argument("count_congruence_products: parameters must be positive");
    CongruenceReport r;
    r.q = q;
    r.M = M;
    r.N = N;
    r.U = U;
    std::vector<i64> us;
    for (i64 u = 1; u <= U; ++u)
        if (std::gcd(static_cast<u64>(u), q) == 1) us.push_back(u);
    r.count = congruence_count(q, M, M + N, us);
    const double nu = static_cast<double>(N) * static_cast<double>(U);
    r.bound_core = nu * (nu / static_cast<double>(q) + 1.0);
    r.slack = slack.slack(q);
    r.ratio = static_cast<double>(r.count) / r.bound_core;
    r.pass = r.ratio <= r.slack;
    return r;
}

OmegaPartition build_omega_partition(const AmplificationConfig& cfg) {
    OmegaPartition om;
    const u64 q = cfg.q;
    om.h_bound = 6.0 * cfg.H * static_cast<double>(cfg.N) / static_cast<double>(cfg.U);
    std::vector<u64> inv;
    for (i64 u : cfg.setU) inv.push_back(*arith::inverse_mod(u, q));
    bool first = true;
    for (i64 n = cfg.M - cfg.N + 1; n <= cfg.M + cfg.N; ++n) {
        for (std::size_t j = 0; j < cfg.setU.size(); ++j) {
            const i64 u = cfg.setU[j];
            const i64 h = static_cast<i64>(std::floor(static_cast<long double>(cfg.H) * n / u));
            const u64 lambda = arith::mulmod(arith::reduce(n, q), inv[j], q);
            ++om.counts[h][lambda];
            ++om.total_pairs;
            om.h_min = first ? h : std::min(om.h_min, h);
            om.h_max = first ? h : std::max(om.h_max, h);
            first = false;
        }
    }
    om.expected_pairs = static_cast<u64>(2 * cfg.N) * cfg.setU.size();
    for (const auto& [h, row] : om.counts)
        for (const auto& [l, c] : row) om.sum_squares += c * c;
    om.full_congruence = congruence_count(q, cfg.M - cfg.N, cfg.M + cfg.N, cfg.setU);
    om.h_range_ok = om.h_min >= 0 && static_cast<double>(om.h_max) <= om.h_bound;
    return om;
}

cplx twisted_partial_sum(const DirichletCharacter& chi, i64 M, i64 N, double t) {
    if (N <= 0) return {};
    if (M < 0) throw std::invalid_argument("twisted_partial_sum: M must be nonnegative");
    CompensatedSum re, im;
    cplx plain{};
    const bool compensated = N > 10000;
    for (i64 n = M + 1; n <= M + N; ++n) {
        const cplx c = chi(n);
        if (c == cplx(0.0)) continue;
        const cplx term = c * std::polar(1.0, t * std::log(static_cast<double>(n)));
        if (compensated) {
            re.add(term.real());
            im.add(term.imag());
        } else {
            plain += term;
        }
    }
    return compensated ? cplx(re.value(), im.value()) : plain;
}

arith::RootOfUnitySum character_sum_exact(const DirichletCharacter& chi, i64 M, i64 N) {
    arith::RootOfUnitySum s(chi.value_order());
    for (i64 n = M + 1; n <= M + N; ++n)
        if (const auto k = chi.log(n)) s.add(*k);
    return s;
}

namespace {

// b[(n, u) pair][v] = chi(n u* + v) (n/u + v)^{it}, pairs in (n, u) order.
struct WTable {
    std::size_t nv = 0;
    std::vector<cplx> b;
};

WTable build_w_table(const AmplificationConfig& cfg, const DirichletCharacter& chi) {
    WTable w;
    w.nv = cfg.setV.size();
    const u64 q = cfg.q;
    for (i64 n = cfg.M - cfg.N + 1; n <= cfg.M + cfg.N; ++n) {
        for (i64 u : cfg.setU) {
            const u64 inv = *arith::inverse_mod(u, q);
            const i64 lambda = static_cast<i64>(arith::mulmod(arith::reduce(n, q), inv, q));
            const double x = static_cast<double>(n) / static_cast<double>(u);
            for (i64 v : cfg.setV)
                w.b.push_back(chi(lambda + v) * std::polar(1.0, cfg.t * std::log(x + static_cast<double>(v))));
        }
    }
    return w;
}

double w_from_table(const WTable& w, const AmplificationConfig& cfg, double alpha) {
    std::vector<cplx> ph(w.nv);
    for (std::size_t j = 0; j < w.nv; ++j) ph[j] = std::polar(1.0, kTwoPi * alpha * static_cast<double>(cfg.setV[j]));
    double total = 0.0;
    for (std::size_t k = 0; k < w.b.size(); k += w.nv) {
        cplx s{};
        for (std::size_t j = 0; j < w.nv; ++j) s += w.b[k + j] * ph[j];
        total += std::abs(s);
    }
    return total;
}

}  // namespace

double w_functional(const AmplificationConfig& cfg, const DirichletCharacter& chi, double alpha) {
    return w_from_table(build_w_table(cfg, chi), cfg, alpha);
}

AlphaChoice maximize_w(const AmplificationConfig& cfg, const DirichletCharacter& chi, int points) {
    const WTable w = build_w_table(cfg, chi);
    AlphaChoice best{0.0, -1.0};
    for (int k = 0; k < points; ++k) {
        const double a = static_cast<double>(k) / points;
        const double val = w_from_table(w, cfg, a);
        if (val > best.w) best = {a, val};
    }
    return best;
}

GPrimeReport g_partial_summation_check(const DirichletCharacter& chi, u64 lambda, double x, i64 V, double t,
                                       double alpha) {
    if (!(x >= 0.0)) throw std::invalid_argument("g_partial_summation_check: x must be nonnegative");
    if (V < 1) throw std::invalid_argument("g_partial_summation_check: V must be at least 1");
    GPrimeReport r;
    const i64 vmin = V / 2 + 1;
    cplx deriv{}, partial{};
    for (i64 v = vmin; v <= V; ++v) {
        const double xv = x + static_cast<double>(v);
        const cplx term = chi(static_cast<i64>(lambda) + v) *
                          std::polar(1.0, t * std::log(xv) + kTwoPi * alpha * static_cast<double>(v));
        deriv += term / xv;
        partial += term;
        r.max_partial = std::max(r.max_partial, std::abs(partial));
    }
    r.g_prime = t * std::abs(deriv);
    r.rigorous_rhs = t / (x + static_cast<double>(vmin)) * r.max_partial;
    r.literal_rhs = t / static_cast<double>(V) * r.max_partial;
    r.pass = r.g_prime <= r.rigorous_rhs * (1.0 + 1e-12) + 1e-300;
    r.literal_pass = r.g_prime <= r.literal_rhs * (1.0 + 1e-12) + 1e-300;
    return r;
}

namespace {

// Integrals over one Omega_h interval for a fixed lambda.
struct IntervalMoments {
    double j1 = 0.0;  // int |G|^4
    double j2 = 0.0;  // int |G'| |G|^3
    double j4 = 0.0;  // int |G'|^4
    double mx = 0.0;  // int max_Q |partial|^4

    IntervalMoments& operator+=(const IntervalMoments& o) {
        j1 += o.j1;
        j2 += o.j2;
        j4 += o.j4;
        mx += o.mx;
        return *this;
    }
    friend IntervalMoments operator*(double w, IntervalMoments m) {
        m.j1 *= w;
        m.j2 *= w;
        m.j4 *= w;
        m.mx *= w;
        return m;
    }
};

struct GValues {
    cplx g;
    cplx gp;
    double max_partial;
};

GValues eval_g(const std::vector<cplx>& a, const std::vector<i64>& setV, double x, double t) {
    GValues out{{}, {}, 0.0};
    for (std::size_t j = 0; j < setV.size(); ++j) {
        const double xv = x + static_cast<double>(setV[j]);
        const cplx term = a[j] * std::polar(1.0, t * std::log(xv));
        out.g += term;
        out.gp += cplx(0.0, t) * term / xv;
        out.max_partial = std::max(out.max_partial, std::abs(out.g));
    }
    return out;
}

double p4(double a) { return (a * a) * (a * a); }

}  // namespace

ChainReport amplification_chain(const AmplificationConfig& cfg, const DirichletCharacter& chi,
                                const SlackPolicy& slack) {
    if (chi.modulus() != cfg.q) throw std::invalid_argument("amplification_chain: character modulus differs from q");
    ChainReport r;
    r.q = cfg.q;
    r.char_index = chi.index();
    r.t = cfg.t;
    r.M = cfg.M;
    r.N = cfg.N;
    r.U = cfg.U;
    r.V = cfg.V;
    r.H = cfg.H;
    r.nU = cfg.setU.size();
    r.nV = cfg.setV.size();
    const double t = cfg.t;
    const double scale = static_cast<double>(cfg.N);

    const cplx S = twisted_partial_sum(chi, cfg.M, cfg.N, t);
    r.lhs = std::abs(S);

    cplx lit{}, sh{};
    for (i64 n = cfg.M - cfg.N + 1; n <= cfg.M + cfg.N; ++n) {
        const cplx term = chi(n) * std::polar(1.0, t * std::log(static_cast<double>(n)));
        lit += tent_weight(static_cast<double>(n), cfg.M, cfg.N, TentConvention::Literal) * term;
        sh += tent_weight(static_cast<double>(n), cfg.M, cfg.N, TentConvention::Shifted) * term;
    }
    r.tent_literal = std::abs(lit);
    r.tent_shifted = std::abs(sh);
    r.tent_literal_exact = std::abs(lit - S) <= 1e-12 * scale;
    r.tent_shifted_exact = std::abs(sh - S) <= 1e-12 * scale;

    cplx amp{};
    for (i64 n = cfg.M - cfg.N + 1; n <= cfg.M + cfg.N; ++n)
        for (i64 u : cfg.setU)
            for (i64 v : cfg.setV) {
                const i64 m = n + u * v;
                const double f = tent_weight(static_cast<double>(m), cfg.M, cfg.N, TentConvention::Shifted);
                if (f == 0.0) continue;
                amp += f * chi(m) * std::polar(1.0, t * std::log(static_cast<double>(m)));
            }
    amp /= static_cast<double>(r.nU * r.nV);
    r.amplified = std::abs(amp);
    r.amplified_exact = std::abs(amp - S) <= 1e-10 * scale;

    const AlphaChoice best = maximize_w(cfg, chi);
    r.alpha = best.alpha;
    r.W = best.w;
    r.kernel = kernel_integral(static_cast<double>(cfg.N), static_cast<double>(cfg.U));
    r.amplification_rhs = slack.c_fourier * r.kernel * r.W / static_cast<double>(r.nU * r.nV);
    r.amplification_pass = r.lhs <= r.amplification_rhs;

    const OmegaPartition om = build_omega_partition(cfg);
    r.sum_I = om.total_pairs;
    r.sum_I2 = om.sum_squares;
    const double nu = static_cast<double>(cfg.N) * static_cast<double>(cfg.U);
    r.b1_core = nu;
    r.b1_exact = om.total_pairs == om.expected_pairs;
    r.b2_core = nu * (nu / static_cast<double>(cfg.q) + 1.0);
    r.b2_ratio = static_cast<double>(om.sum_squares) / r.b2_core;
    r.b2_pass = r.b2_ratio <= slack.slack(cfg.q) && om.sum_squares <= om.full_congruence;

    const u64 q = cfg.q;
    const double H = cfg.H;
    const i64 vmin = cfg.V / 2 + 1;
    std::vector<u64> inv;
    for (i64 u : cfg.setU) inv.push_back(*arith::inverse_mod(u, q));
    // (h, lambda) -> the x = n/u points that land there
    std::map<std::pair<i64, u64>, std::vector<double>> points;
    for (i64 n = cfg.M - cfg.N + 1; n <= cfg.M + cfg.N; ++n)
        for (std::size_t j = 0; j < cfg.setU.size(); ++j) {
            const i64 u = cfg.setU[j];
            const i64 h = static_cast<i64>(std::floor(static_cast<long double>(H) * n / u));
            const u64 lambda = arith::mulmod(arith::reduce(n, q), inv[j], q);
            points[{h, lambda}].push_back(static_cast<double>(n) / static_cast<double>(u));
        }

    const int vn = static_cast<int>(cfg.setV.size());
    const auto pbound = [&](double x) {
        return 2.0 * t * (1.0 / (x + cfg.setV.front()) - 1.0 / (x + cfg.setV.back())) + t / (x + cfg.setV.front());
    };
    std::vector<cplx> a(vn);
    double sg_rhs = 0.0;
    for (const auto& [key, xs] : points) {
        const auto [h, lambda] = key;
        for (int j = 0; j < vn; ++j)
            a[j] = chi(static_cast<i64>(lambda) + cfg.setV[j]) *
                   std::polar(1.0, kTwoPi * r.alpha * static_cast<double>(cfg.setV[j]));
        const double lo = static_cast<double>(h) / H, hi = static_cast<double>(h + 1) / H;
        const auto plan = quad::bisect(quad::plan_panels(pbound, lo, hi, kPi / 16, std::size_t{1} << 20, 4));
        const IntervalMoments m = quad::integrate_on(
            [&](double x) {
                const GValues g = eval_g(a, cfg.setV, x, t);
                const double ag = std::abs(g.g), agp = std::abs(g.gp);
                IntervalMoments v;
                v.j1 = p4(ag);
                v.j2 = agp * ag * ag * ag;
                v.j4 = p4(agp);
                v.mx = p4(g.max_partial);
                return v;
            },
            plan);
        const double sg = H * m.j1 + 4.0 * m.j2;
        for (double x : xs) {
            ++r.sg_cases;
            if (p4(std::abs(eval_g(a, cfg.setV, x, t).g)) > sg * (1.0 + 1e-9)) ++r.sg_failures;
        }
        sg_rhs += static_cast<double>(xs.size()) * std::pow(sg, 0.25);
        ++r.holder_cases;
        if (m.j2 > std::pow(m.j1, 0.75) * std::pow(m.j4, 0.25) * (1.0 + 1e-9)) ++r.holder_failures;
        std::vector<double> probes = xs;
        probes.push_back(lo);
        probes.push_back(0.5 * (lo + hi));
        for (double x : probes) {
            if (x < 0.0) continue;
            const auto gp = g_partial_summation_check(chi, lambda, x, cfg.V, t, r.alpha);
            ++r.gprime_cases;
            if (!gp.pass) ++r.gprime_failures;
            if (!gp.literal_pass) ++r.gprime_literal_failures;
        }
        r.sum_max_moment += m.mx;
    }
    (void)vmin;
    r.w_sg_rhs = sg_rhs;
    r.w_sg_pass = r.W <= sg_rhs * (1.0 + 1e-9);

    const double sI = static_cast<double>(r.sum_I);
    r.chain_rhs = 9.0 * (t / static_cast<double>(cfg.V)) * sI * sI * static_cast<double>(r.sum_I2) * r.sum_max_moment;
    r.chain_pass = std::pow(r.W, 4) <= r.chain_rhs * (1.0 + 1e-9);

    meanvalue::MomentParams mp;
    mp.V = cfg.V;
    mp.t = t;
    mp.alpha = r.alpha;
    mp.A = 0.0;
    mp.B = static_cast<double>(om.h_max + 1) / H;
    mp.rel_tol = 1e-6;
    mp.enforce_interval = false;
    r.interval_over_v = mp.B / static_cast<double>(cfg.V);
    r.lemma10_lhs = meanvalue::max_window_fourth_moment(chi, mp).value;
    const double dq = static_cast<double>(q), dV = static_cast<double>(cfg.V);
    r.lemma10_core = dq * std::pow(dV, 3) + std::sqrt(dq) * std::pow(dV, 5) / std::sqrt(t);
    r.lemma10_ratio = r.lemma10_lhs / r.lemma10_core;
    r.lemma10_pass = r.lemma10_ratio <= slack.slack_scale(dq * dV);
    return r;
}

std::pair<i64, i64> theorem1_n_range(u64 q, double t) {
    const long double qt = static_cast<long double>(q) * t;
    i64 lo = floor_fourth_root(qt);
    if (pow4l(static_cast<long double>(lo)) < qt) ++lo;
    const long double cap = std::pow(static_cast<long double>(q), 5) * t;  // N^8 <= q^5 t
    i64 hi = static_cast<i64>(std::floor(std::pow(cap, 0.125L)));
    auto p8 = [](i64 n) { return pow4l(static_cast<long double>(n)) * pow4l(static_cast<long double>(n)); };
    while (p8(hi + 1) <= cap) ++hi;
    while (hi > 0 && p8(hi) > cap) --hi;
    return {lo, hi};
}

i64 theorem1_mid_n(u64 q, double t) {
    const auto [lo, hi] = theorem1_n_range(q, t);
    if (lo > hi) throw std::invalid_argument("theorem1_mid_n: empty N range");
    const i64 mid = static_cast<i64>(std::llround(std::sqrt(static_cast<double>(lo) * static_cast<double>(hi))));
    return std::clamp(mid, lo, hi);
}

Theorem1Report theorem1_check(u64 q, double t, i64 N, i64 M, const DirichletCharacter& chi, const SlackPolicy& slack,
                              bool permissive) {
    if (chi.modulus() != q) throw std::invalid_argument("theorem1_check: character modulus differs from q");
    if (!chi.is_primitive()) throw std::invalid_argument("theorem1_check: character must be primitive");
    const auto cfg = AmplificationConfig::make(q, t, M, N, permissive);
    Theorem1Report r;
    r.q = q;
    r.char_index = chi.index();
    r.t = t;
    r.M = M;
    r.N = N;
    r.U = cfg.U;
    r.V = cfg.V;
    r.hypotheses = cfg.hypotheses_hold();
    r.lhs = std::abs(twisted_partial_sum(chi, M, N, t));
    const double qt = static_cast<double>(q) * t;
    r.core = std::sqrt(static_cast<double>(N)) * std::pow(qt, 3.0 / 16.0);
    r.ratio = r.lhs / r.core;
    r.slack = slack.slack_scale(qt);
    r.pass = r.ratio <= r.slack;
    return r;
}

ScanResult exponent_scan(const std::vector<std::pair<u64, double>>& family, int m_samples, double min_decades) {
    if (family.size() < 2) throw std::invalid_argument("exponent_scan: family needs at least two cases");
    if (m_samples < 1) throw std::invalid_argument("exponent_scan: need at least one M sample");
    double lo = INFINITY, hi = 0.0;
    for (const auto& [q, t] : family) {
        lo = std::min(lo, static_cast<double>(q) * t);
        hi = std::max(hi, static_cast<double>(q) * t);
    }
    ScanResult res;
    res.decades = std::log10(hi / lo);
    if (res.decades < min_decades)
        throw std::invalid_argument("exponent_scan: family spans " + std::to_string(res.decades) +
                                    " decades of qt, below the required " + std::to_string(min_decades));

    for (const auto& [q, t] : family) {
        ScanCase c;
        c.q = q;
        c.t = t;
        c.N = theorem1_mid_n(q, t);
        c.max_normalized = -1.0;
        const arith::CharacterGroup group(q);
        const auto chars = group.primitive_characters();
        if (chars.empty()) throw std::invalid_argument("exponent_scan: modulus without primitive characters");
        for (int k = 0; k < m_samples; ++k) {
            const i64 M = m_samples == 1 ? c.N : c.N + static_cast<i64>(std::llround(static_cast<double>(k) * c.N / (m_samples - 1)));
            for (const auto& chi : chars) {
                const double val = std::abs(twisted_partial_sum(chi, M, c.N, t)) / std::sqrt(static_cast<double>(c.N));
                if (val > c.max_normalized) {
                    c.max_normalized = val;
                    c.best_M = M;
                    c.best_char = chi.index();
                }
            }
        }
        res.cases.push_back(c);
    }
    const double n = static_cast<double>(res.cases.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& c : res.cases) {
        const double x = std::log(static_cast<double>(c.q) * c.t), y = std::log(c.max_normalized);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    res.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    res.intercept = (sy - res.slope * sx) / n;
    for (auto& c : res.cases)
        c.residual = std::log(c.max_normalized) - (res.intercept + res.slope * std::log(static_cast<double>(c.q) * c.t));
    return res;
}

}  // namespace critline::amplify
