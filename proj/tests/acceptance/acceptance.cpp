// Acceptance run: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <thread>

#include "critline/amplify.hpp"
#include "critline/characters.hpp"
#include "critline/meanvalue.hpp"
#include "critline/suites.hpp"

using namespace critline;
using arith::CharacterGroup;
using arith::i64;
using arith::u64;
using report::Report;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

int g_jobs = 1;
report::Manifest g_manifest;

Report run(const std::string& suite, suites::Grid grid = {}) {
    suites::SuiteConfig c{.suite = suite, .grid = std::move(grid), .seed = 1, .jobs = g_jobs, .failures_only = true};
    return suites::run_suite(c, g_manifest);
}

std::string summary(const Report& r) {
    std::ostringstream s;
    s << r.suite << ": cases=" << r.cases << " row_failures=" << r.row_failures;
    std::size_t failed_checks = 0;
    for (const auto& c : r.checks) failed_checks += !c.pass;
    s << " checks=" << r.checks.size() << " failed_checks=" << failed_checks
      << " max_ratio=" << report::format_number(r.max_ratio);
    if (r.exhausted) s << " exhausted: " << r.exhausted_what;
    return s.str();
}

std::string failed_check_names(const Report& r, std::size_t limit = 6) {
    std::string out;
    std::size_t n = 0;
    for (const auto& c : r.checks)
        if (!c.pass && n++ < limit) out += " [" + c.name + ": " + c.detail + "]";
    return out;
}

Outcome c1() {
    const auto r = run("lemma3", {{"count", {1000}}, {"eps", {1e-3, 1e-2, 0.1, 1}}});
    return {r.pass() && r.cases == 4000, summary(r)};
}

Outcome c2() {
    const auto r = run("lemma7", {{"cmin", {-10}}, {"cmax", {10}}, {"pkmax", {343}}});
    return {r.pass(), summary(r)};
}

Outcome c3() {
    const auto r = run("lemma6", {{"pk", {9, 27, 8, 16, 25, 49}}, {"vmax", {6}}});
    return {r.pass(), summary(r)};
}

Outcome c4() {
    const auto r = run("lemma9", {{"q", {15, 21, 33, 35, 45}}, {"vmax", {6}}});
    return {r.pass(), summary(r)};
}

Outcome c5() {
    std::vector<double> qs;
    for (int q = 1; q <= 200; ++q) qs.push_back(q);
    for (double q : {211, 997, 1000, 1024, 2310, 4096, 5040, 7919, 9973, 10000}) qs.push_back(q);
    const auto r = run("lemma1", {{"q", qs},
                                  {"N", {1, 2, 4, 8, 16, 32, 64, 128, 256}},
                                  {"U", {1, 2, 4, 8, 16}},
                                  {"M", {0, 37, 1000}}});
    std::string worst;
    for (const auto& row : r.rows) {
        std::ostringstream s;
        s << " [fail";
        for (std::size_t i = 0; i < r.columns.size(); ++i) s << " " << r.columns[i] << "=" << row[i].dump();
        s << "]";
        if (worst.size() < 600) worst += s.str();
    }
    // Sum of squared partition counts over the configurations used by the main bound.
    const SlackPolicy& slack = g_manifest.slack;
    std::size_t b2_cases = 0, b2_fail = 0;
    double b2_worst = 0;
    for (u64 q : {53ull, 59ull, 61ull, 101ull, 211ull, 997ull, 1009ull, 2003ull})
        for (double t : {2.0, 8.0, 32.0}) {
            const auto [lo, hi] = amplify::theorem1_n_range(q, t);
            for (i64 N : {lo, amplify::theorem1_mid_n(q, t), hi}) {
                if (N < 1 || lo > hi || N > 256) continue;
                for (i64 M : {N, (3 * N) / 2, 2 * N}) {
                    amplify::AmplificationConfig cfg;
                    try {
                        cfg = amplify::AmplificationConfig::make(q, t, M, N);
                    } catch (const std::invalid_argument&) {
                        continue;
                    }
                    if (cfg.U > 16) continue;
                    const auto om = amplify::build_omega_partition(cfg);
                    const double nu = static_cast<double>(N) * static_cast<double>(cfg.U);
                    const double ratio = static_cast<double>(om.sum_squares) / (nu * (nu / q + 1));
                    ++b2_cases;
                    b2_worst = std::max(b2_worst, ratio);
                    if (ratio > slack.slack(q) || om.sum_squares > om.full_congruence) ++b2_fail;
                }
            }
        }
    std::ostringstream s;
    s << summary(r) << "; partition sweep cases=" << b2_cases << " failures=" << b2_fail
      << " worst=" << report::format_number(b2_worst) << worst;
    return {r.pass() && b2_fail == 0 && b2_cases > 0, s.str()};
}

Outcome c6() {
    const suites::Grid grid{{"V", {4, 8}}, {"t", {10, 20, 40, 80}}};
    const auto a = run("lemma4", grid);
    const auto b = run("lemma5", grid);
    return {a.pass() && b.pass(),
            summary(a) + failed_check_names(a) + "; " + summary(b) + failed_check_names(b)};
}

Outcome c7() {
    const auto r = run("lemma10", {{"q", {13, 29}}, {"V", {8}}, {"t", {30, 120}}, {"alpha", {0, 0.3}}});
    return {r.pass(), summary(r)};
}

Outcome c8() {
    std::mt19937_64 rng(2024);
    std::size_t recon_fail = 0;
    for (int it = 0; it < 1000; ++it) {
        const i64 V = 1 + static_cast<i64>(rng() % 100000);
        const i64 Q = 1 + static_cast<i64>(rng() % V);
        const auto d = meanvalue::dyadic_decompose(Q, V);
        i64 pos = 0, digits = 0;
        bool ok = true;
        for (int r = 0; r <= d.R; ++r) digits += static_cast<i64>(d.digits[r]) << r;
        for (const auto& b : d.blocks) {
            ok = ok && b.offset == pos && b.size == (i64{1} << b.r) && b.offset == d.s[b.r] * b.size;
            // windows inside (V/2, V] only use blocks with s < 2^{R-r}
            if (Q <= meanvalue::window_span(V)) ok = ok && d.s[b.r] < (i64{1} << (d.R - b.r));
            pos += b.size;
        }
        ok = ok && pos == Q && digits == Q && (i64{1} << d.R) <= V && V < (i64{2} << d.R);
        recon_fail += !ok;
    }
    int holder_cases = 0, holder_fail = 0;
    for (u64 q : {13ull, 29ull}) {
        const CharacterGroup g(q);
        for (u64 ci = 0; ci < g.size(); ci += 3) {
            const auto chi = g.character(ci);
            for (int s = 0; s < 4; ++s) {
                const u64 lambda = rng() % q;
                const double x = std::uniform_real_distribution<double>(0, 64)(rng);
                const auto h = meanvalue::holder_check(chi, lambda, x, {.V = 32, .t = 30, .alpha = 0.3, .A = 0, .B = 1});
                holder_cases += h.cases + h.r_cubed_cases;
                holder_fail += h.failures + h.r_cubed_failures;
            }
        }
    }
    std::ostringstream s;
    s << "reconstruction cases=1000 failures=" << recon_fail << "; pointwise majorant cases=" << holder_cases
      << " failures=" << holder_fail;
    return {recon_fail == 0 && holder_fail == 0, s.str()};
}

Outcome c9() {
    const auto r = run("exponent-scan");
    return {r.pass(), summary(r) + [&] {
                std::string s;
                for (const auto& c : r.checks) s += " [" + c.name + ": " + c.detail + "]";
                return s;
            }()};
}

Outcome c10() {
    std::size_t orth = 0, orth_fail = 0;
    // Row sums: sum_n chi(n) is 0 exactly unless chi is principal; pairs via chi * conj(psi).
    for (u64 q = 1; q <= 200; ++q) {
        const CharacterGroup g(q);
        const auto chars = g.characters();
        for (const auto& chi : chars) {
            const auto s = amplify::character_sum_exact(chi, 0, static_cast<i64>(q));
            const bool ok = chi.is_principal() ? s.terms() == static_cast<i64>(g.size()) && s.counts()[0] == s.terms()
                                               : s.is_zero();
            ++orth;
            orth_fail += !ok;
            // full period at t = 0 starting anywhere
            if (!chi.is_principal()) {
                ++orth;
                orth_fail += !amplify::character_sum_exact(chi, 1000 + static_cast<i64>(q), static_cast<i64>(q)).is_zero();
            }
        }
        if (q <= 100)
            for (std::size_t i = 0; i < chars.size(); ++i)
                for (std::size_t j = 0; j < chars.size(); ++j) {
                    ++orth;
                    orth_fail += (chars[i] * chars[j].conj()).is_principal() != (i == j);
                }
        if (q <= 40)
            for (i64 a = 0; a < static_cast<i64>(q); ++a)
                for (i64 b = 0; b < static_cast<i64>(q); ++b) {
                    arith::RootOfUnitySum s(g.exponent());
                    for (const auto& chi : chars) {
                        const auto la = chi.log(a), lb = chi.log(b);
                        if (la && lb) s.add((*la + g.exponent() - *lb) % g.exponent());
                    }
                    const bool units = std::gcd(static_cast<u64>(a), q) == 1 && std::gcd(static_cast<u64>(b), q) == 1;
                    const bool same = units && (a - b) % static_cast<i64>(q) == 0;
                    const bool ok = same ? s.terms() == static_cast<i64>(g.size()) && s.counts()[0] == s.terms()
                                         : s.is_zero();
                    ++orth;
                    orth_fail += !ok;
                }
    }
    std::size_t gauss = 0, gauss_fail = 0;
    double gauss_worst = 0;
    for (u64 q = 2; q <= 200; ++q) {
        const CharacterGroup g(q);
        for (const auto& chi : g.primitive_characters()) {
            std::complex<double> tau{};
            for (u64 a = 1; a <= q; ++a)
                tau += chi(static_cast<i64>(a)) * std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(a) / q);
            const double dev = std::abs(std::abs(tau) - std::sqrt(static_cast<double>(q)));
            gauss_worst = std::max(gauss_worst, dev);
            ++gauss;
            gauss_fail += dev > 1e-9;
        }
    }
    std::size_t ram = 0, ram_fail = 0;
    for (u64 q = 1; q <= 500; ++q)
        for (i64 n = -500; n <= 500; ++n) {
            ++ram;
            i64 e = 0;
            try {
                e = arith::ramanujan_sum_exponential(q, n);
            } catch (const std::runtime_error&) {
                ++ram_fail;
                continue;
            }
            ram_fail += arith::ramanujan_sum(q, n) != e;
        }
    // Exact cyclotomic test of sum_units zeta_q^{a n} - c_q(n) on every residue for q <= 100.
    std::size_t ram_exact = 0, ram_exact_fail = 0;
    for (u64 q = 1; q <= 100; ++q)
        for (u64 r = 0; r < q; ++r) {
            arith::RootOfUnitySum s(q);
            for (u64 a = 1; a <= q; ++a)
                if (std::gcd(a, q) == 1) s.add(static_cast<u64>((static_cast<unsigned __int128>(a) * r) % q));
            s.add(0, -arith::ramanujan_sum(q, static_cast<i64>(r)));
            ++ram_exact;
            ram_exact_fail += !s.is_zero();
        }
    std::ostringstream s;
    s << "orthogonality cases=" << orth << " failures=" << orth_fail << "; gauss cases=" << gauss
      << " failures=" << gauss_fail << " worst=" << gauss_worst << "; ramanujan cases=" << ram
      << " failures=" << ram_fail << " exact cases=" << ram_exact << " failures=" << ram_exact_fail;
    return {orth_fail == 0 && gauss_fail == 0 && ram_fail == 0 && ram_exact_fail == 0, s.str()};
}

struct Criterion {
    int id;
    const char* name;
    double limit_seconds;
    std::function<Outcome()> body;
};

}  // namespace

int main() {
    g_jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    const auto t0 = std::chrono::steady_clock::now();
    g_manifest = suites::calibrate(1, g_jobs);
    const double cal = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("calibration: c0=%s c_osc=%s c_fourier=%s c_log=%s (%.1f s)\n",
                report::format_number(g_manifest.slack.c0).c_str(), report::format_number(g_manifest.slack.c_osc).c_str(),
                report::format_number(g_manifest.slack.c_fourier).c_str(),
                report::format_number(g_manifest.slack.c_log).c_str(), cal);

    const std::vector<Criterion> criteria = {
        {1, "sublevel bound, 1000 random quadratics", 1.0, c1},
        {2, "root counts modulo prime powers, exhaustive", 30.0, c2},
        {3, "prime-power complete sums", 300.0, c3},
        {4, "general-modulus complete sums", 600.0, c4},
        {5, "congruence counts", 120.0, c5},
        {6, "oscillatory bounds and trend", 600.0, c6},
        {7, "max-window fourth moment", 900.0, c7},
        {8, "dyadic machinery", 1.0, c8},
        {9, "exponent scan", 1200.0, c9},
        {10, "structural exactness", 30.0, c10},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.body();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = secs < c.limit_seconds;
        const bool pass = o.pass && in_time;
        failed += !pass;
        std::printf("criterion %2d %s: %s (%.2f s, limit %.0f s%s) %s\n", c.id, pass ? "PASS" : "FAIL", c.name, secs,
                    c.limit_seconds, in_time ? "" : ", over time", o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
