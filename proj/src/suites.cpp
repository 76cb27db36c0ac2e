#include "critline/suites.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

#include "critline/amplify.hpp"
#include "critline/charsums.hpp"
#include "critline/critical_line.hpp"
#include "critline/meanvalue.hpp"
#include "critline/oscillatory.hpp"
#include "critline/polynomial.hpp"

namespace critline::suites {

using arith::CharacterGroup;
using arith::DirichletCharacter;
using arith::i64;
using arith::u64;
using report::json;
using report::Report;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kScanSlopeTarget = 3.0 / 16.0 + 0.06;
constexpr double kScanStability = 0.01;
constexpr double kDualPathTolerance = 1e-6;

std::vector<double> first_primes_from(u64 start, int count) {
    std::vector<double> out;
    for (u64 n = start; static_cast<int>(out.size()) < count; ++n)
        if (arith::is_prime(n)) out.push_back(static_cast<double>(n));
    return out;
}

const std::vector<SuiteInfo>& build_list() {
    static const std::vector<SuiteInfo> list = {
        {"lemma1", "count of n1 u1 = n2 u2 mod q, u coprime to q, against NU(NU/q + 1)",
         {{"q", {7, 30, 97, 210, 1009, 9973}}, {"N", {1, 8, 64, 256}}, {"U", {1, 4, 16}}, {"M", {0, 1000}}}},
        {"lemma2", "|f(u)| <= (1/(b-a)) int |f| + int |f'| at 101 points of [a, b]",
         {{"t", {10, 40}}, {"V", {4, 8}}, {"alpha", {0.3}}}},
        {"lemma3", "measure of {|F| <= eps} against 8 eps / |a (alpha1 - alpha2)| for random real quadratics",
         {{"count", {1000}}, {"eps", {0.001, 0.01, 0.1, 1}}}},
        {"lemma4",
         "int_A^B F(x)^{it} dx against V^2 t^{-1/2} |Delta|^{-1/4} (V4) or V^4 / (t |(v1-v4)(v2-v4)|) (V5), "
         "plus the t-doubling trend",
         {{"V", {4, 8}}, {"t", {10, 20, 40, 80}}, {"A", {0}}, {"Bscale", {8}}}},
        {"lemma5", "int_A^B ((x+v1)/(x+v4))^{it} dx against V^2 / (t |v1 - v4|), plus the t-doubling trend",
         {{"V", {4, 8}}, {"t", {10, 20, 40, 80}}, {"A", {0}}, {"Bscale", {8}}}},
        {"lemma6", "complete sums of chi((l+v1)(l+v2)/((l+v3)(l+v4))) mod p^alpha against the parity-case root-count bound",
         {{"pk", {9, 27, 8, 16, 25, 49}}, {"vmax", {6}}}},
        {"lemma7", "roots of a quadratic F mod p^alpha against 2 (p^alpha, disc F)^{1/2}; lifting path against exhaustion",
         {{"cmin", {-4}}, {"cmax", {4}}, {"pkmax", {343}}}},
        {"lemma9",
         "complete sums mod composite q against (q, Delta)^{1/2} q^{1/2} or (q, (v1-v4)(v2-v4)) q^{1/2}; CRT product "
         "path; degenerate pair sums against (q, v1 - v4)",
         {{"q", {15, 21, 33, 35, 45}}, {"vmax", {6}}}},
        {"lemma10",
         "int_A^B sum_l max_Q |sum chi(l+v)(x+v)^{it} e(alpha v)|^4 dx against q V^3 + q^{1/2} V^5 t^{-1/2}; "
         "fixed windows against C(q V^2 + q^{1/2} V^4 t^{-1/2}); dyadic majorant",
         {{"q", {13, 29}}, {"V", {8}}, {"t", {30, 120}}, {"alpha", {0, 0.3}}, {"A", {0}}, {"B", {8}}, {"chars", {0}}}},
        {"theorem1",
         "|sum_{M<n<=M+N} chi(n) n^{it}| against N^{1/2} (qt)^{3/16}, with the amplification chain and kernel bound",
         {{"q", {53, 101}}, {"t", {2, 8}}, {"msamples", {4}}}},
        {"exponent-scan", "least-squares exponent of max |S| / N^{1/2} in qt, and its stability under denser M sampling",
         {{"q", first_primes_from(50, 12)}, {"t", {2, 8, 32}}, {"msamples", {8}}}},
    };
    return list;
}

// Keys a suite accepts beyond its defaults.
const std::map<std::string, std::vector<std::string>>& optional_keys() {
    static const std::map<std::string, std::vector<std::string>> keys = {{"theorem1", {"N"}}};
    return keys;
}

struct Ctx {
    const SuiteInfo* info;
    Grid grid;
    SlackPolicy slack;
    u64 seed;
    int jobs;
    bool permissive;
    bool store_all;

    const std::vector<double>& get(const std::string& key) const {
        const auto it = grid.find(key);
        if (it == grid.end()) throw std::logic_error("suite " + info->id + ": missing key " + key);
        return it->second;
    }
    bool has(const std::string& key) const { return grid.count(key) != 0; }
    double scalar(const std::string& key) const { return get(key).front(); }
};

std::vector<i64> as_ints(const std::vector<double>& xs, const std::string& key) {
    std::vector<i64> out;
    for (double x : xs) {
        if (x != std::floor(x)) throw ConfigError("grid key " + key + " needs integers");
        out.push_back(static_cast<i64>(x));
    }
    return out;
}

// Runs f(i) for i < n on `jobs` threads and returns results in index order.
template <class R>
std::vector<R> parallel_map(std::size_t n, int jobs, const std::function<R(std::size_t)>& f) {
    std::vector<R> out(n);
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex mu;
    auto worker = [&] {
        while (true) {
            const std::size_t i = next++;
            if (i >= n) return;
            try {
                out[i] = f(i);
            } catch (...) {
                std::lock_guard lock(mu);
                if (!error) error = std::current_exception();
                next = n;
            }
        }
    };
    const int k = std::max(1, std::min<int>(jobs, static_cast<int>(n)));
    if (k == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int j = 0; j < k; ++j) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (error) std::rethrow_exception(error);
    return out;
}

using Rows = std::vector<json>;

void add_all(Report& r, const std::vector<Rows>& parts, bool store_all) {
    for (const auto& part : parts)
        for (const auto& row : part) r.add_row(row, store_all);
}

json quad_json(const std::array<i64, 4>& v) { return json::array({v[0], v[1], v[2], v[3]}); }

std::vector<i64> window(i64 V) {
    std::vector<i64> w;
    for (i64 v = V / 2 + 1; v <= V; ++v) w.push_back(v);
    return w;
}

// ---------------------------------------------------------------- lemma1

void suite_lemma1(const Ctx& c, Report& r) {
    r.columns = {"q", "M", "N", "U", "count", "core", "ratio", "slack", "pass"};
    struct Case {
        i64 q, M, N, U;
    };
    std::vector<Case> cases;
    for (i64 q : as_ints(c.get("q"), "q"))
        for (i64 M : as_ints(c.get("M"), "M"))
            for (i64 N : as_ints(c.get("N"), "N"))
                for (i64 U : as_ints(c.get("U"), "U")) {
                    if (q < 1 || N < 1 || U < 1 || M < 0) throw ConfigError("lemma1: q, N, U >= 1 and M >= 0");
                    cases.push_back({q, M, N, U});
                }
    const auto parts = parallel_map<Rows>(cases.size(), c.jobs, [&](std::size_t i) {
        const auto& k = cases[i];
        const auto rep = amplify::count_congruence_products(k.M, k.N, k.U, static_cast<u64>(k.q), c.slack);
        return Rows{json::array({k.q, k.M, k.N, k.U, rep.count, rep.bound_core, rep.ratio, rep.slack, rep.pass})};
    });
    add_all(r, parts, c.store_all);
}

// ---------------------------------------------------------------- lemma2

void suite_lemma2(const Ctx& c, Report& r) {
    r.columns = {"case", "t", "V", "a", "b", "max_value", "rhs", "ratio", "pass"};
    using F = std::function<quad::cplx(double)>;
    struct Case {
        std::string name;
        double t, V, a, b;
        F f, df;
        quad::FrequencyBound omega;
    };
    std::vector<Case> cases;
    const auto flat = [](double) { return 1.0; };
    cases.push_back({"constant", 0, 0, 0, 1, [](double) { return quad::cplx(2.5); }, [](double) { return quad::cplx(0); }, flat});
    cases.push_back({"linear", 0, 0, 0, 1, [](double x) { return quad::cplx(x); }, [](double) { return quad::cplx(1); }, flat});
    cases.push_back({"sin10", 0, 0, 0, kPi, [](double x) { return quad::cplx(std::sin(10 * x)); },
                     [](double x) { return quad::cplx(10 * std::cos(10 * x)); }, [](double) { return 10.0; }});
    cases.push_back({"cubic", 0, 0, -2, 2, [](double x) { return quad::cplx(x * x * x - 2 * x); },
                     [](double x) { return quad::cplx(3 * x * x - 2); }, [](double) { return 4.0; }});
    const double alpha = c.scalar("alpha");
    for (i64 V : as_ints(c.get("V"), "V"))
        for (double t : c.get("t")) {
            if (V < 2 || t < 1) throw ConfigError("lemma2: V >= 2 and t >= 1");
            const auto w = window(V);
            const double vmin = static_cast<double>(w.front());
            // window sum of (x+v)^{it} e(alpha v)
            const auto g = [w, t, alpha](double x) {
                quad::cplx s{};
                for (i64 v : w) s += std::polar(1.0, t * std::log(x + v) + 2 * kPi * alpha * v);
                return s;
            };
            const auto dg = [w, t, alpha](double x) {
                quad::cplx s{};
                for (i64 v : w) s += quad::cplx(0, t / (x + v)) * std::polar(1.0, t * std::log(x + v) + 2 * kPi * alpha * v);
                return s;
            };
            const auto om = [t, vmin](double x) { return t / (x + vmin); };
            cases.push_back({"window", t, static_cast<double>(V), 0, static_cast<double>(V), g, dg, om});
            // (x + 1) F(x)^{it} for the quadruple (V, V-1, V/2+1, V/2+2) or its nearest in-window form
            const i64 v1 = V, v2 = V - 1, v3 = V / 2 + 1, v4 = std::min<i64>(V / 2 + 2, V);
            const auto phase = [=](double x) {
                return t * (std::log(x + v1) + std::log(x + v2) - std::log(x + v3) - std::log(x + v4));
            };
            const auto dphase = [=](double x) {
                return t * (1 / (x + v1) + 1 / (x + v2) - 1 / (x + v3) - 1 / (x + v4));
            };
            cases.push_back({"tilted", t, static_cast<double>(V), 0, static_cast<double>(V),
                             [=](double x) { return (x + 1) * std::polar(1.0, phase(x)); },
                             [=](double x) {
                                 return (1.0 + quad::cplx(0, (x + 1) * dphase(x))) * std::polar(1.0, phase(x));
                             },
                             [=](double x) { return std::abs(dphase(x)) + 1.0; }});
        }
    const auto parts = parallel_map<Rows>(cases.size(), c.jobs, [&](std::size_t i) {
        const auto& k = cases[i];
        const auto rep = osc::sobolev_gallagher_check(k.f, k.df, k.a, k.b, k.omega);
        return Rows{json::array({k.name, k.t, k.V, k.a, k.b, rep.max_value, rep.mean_abs + rep.variation,
                                 rep.worst_ratio, rep.pass})};
    });
    add_all(r, parts, c.store_all);
}

// ---------------------------------------------------------------- lemma3

void suite_lemma3(const Ctx& c, Report& r) {
    r.columns = {"case", "a", "b", "c", "eps", "measure", "bound", "ratio", "pass"};
    const i64 count = as_ints(c.get("count"), "count").front();
    if (count < 1) throw ConfigError("lemma3: count must be positive");
    std::mt19937_64 rng(c.seed);
    std::uniform_real_distribution<double> root(-10.0, 10.0), lead(0.1, 10.0);
    for (i64 k = 0; k < count; ++k) {
        double r1 = root(rng), r2 = root(rng);
        while (std::abs(r1 - r2) < 1e-3) r2 = root(rng);
        const double a = ((rng() & 1) ? 1.0 : -1.0) * lead(rng);
        const osc::RealQuadratic f{a, -a * (r1 + r2), a * r1 * r2};
        if (!f.has_distinct_real_roots()) continue;
        for (double eps : c.get("eps")) {
            if (!(eps > 0)) throw ConfigError("lemma3: eps must be positive");
            const auto rep = osc::pss_bound_check(f, eps);
            r.add_row(json::array({k, f.a, f.b, f.c, eps, rep.measure, rep.bound, rep.ratio, rep.pass}), c.store_all);
        }
    }
}

// ---------------------------------------------------------------- lemma4, lemma5

const std::vector<std::string> kOscColumns = {"class", "v", "t", "A", "B", "V", "integral_abs", "error_estimate",
                                              "core", "ratio", "pass"};

json osc_row(const osc::OscReport& o) {
    return json::array({o.cls, o.v, o.t, o.A, o.B, o.V, o.integral_abs, o.error_estimate, o.core, o.ratio, o.pass});
}

void add_trend(Report& r, const std::vector<osc::OscReport>& rows, const std::string& cls, double tol) {
    std::vector<osc::OscReport> sel;
    for (const auto& o : rows)
        if (o.cls == cls) sel.push_back(o);
    const auto tr = osc::trend_check(sel, tol);
    for (const auto& [t, ok] : tr.steps) {
        std::ostringstream d;
        d << "max ratio " << report::format_number(tr.grid_max.at(t)) << " at t=" << report::format_number(t)
          << ", " << report::format_number(tr.grid_max.at(2 * t)) << " at t=" << report::format_number(2 * t)
          << ", tolerance " << report::format_number(tol);
        r.checks.push_back({"trend " + cls + " t=" + report::format_number(t), ok, d.str()});
    }
}

void suite_oscillatory(const Ctx& c, Report& r, bool degree_one) {
    r.columns = kOscColumns;
    struct Case {
        std::array<i64, 4> v;
        bool balanced;
        double t, A, B, V;
    };
    std::vector<Case> cases;
    const double A = c.scalar("A"), scale = c.scalar("Bscale");
    if (scale > osc::kIntervalScale || !(A >= 0)) throw ConfigError("lemma4/5: need A >= 0 and Bscale <= 8");
    for (i64 V : as_ints(c.get("V"), "V")) {
        if (V < 2) throw ConfigError("lemma4/5: V must be at least 2");
        const auto w = window(V);
        const double B = scale * static_cast<double>(V);
        if (!(B > A)) throw ConfigError("lemma4/5: need B > A");
        for (double t : c.get("t")) {
            if (t < 1) throw ConfigError("lemma4/5: t must be at least 1");
            if (degree_one) {
                for (i64 v1 : w)
                    for (i64 v4 : w)
                        if (v1 != v4) cases.push_back({{v1, 0, 0, v4}, false, t, A, B, static_cast<double>(V)});
                continue;
            }
            for (i64 v1 : w)
                for (i64 v2 : w)
                    for (i64 v3 : w)
                        for (i64 v4 : w) {
                            const auto qd = charsums::classify_quadruple(v1, v2, v3, v4);
                            if (qd.cls == charsums::QuadClass::V4_general || qd.cls == charsums::QuadClass::V5_balanced)
                                cases.push_back({{v1, v2, v3, v4}, qd.cls == charsums::QuadClass::V5_balanced, t, A, B,
                                                 static_cast<double>(V)});
                        }
        }
    }
    const auto reps = parallel_map<osc::OscReport>(cases.size(), c.jobs, [&](std::size_t i) {
        const auto& k = cases[i];
        if (degree_one) return osc::degree1_bound_check(k.v[0], k.v[3], k.V, k.t, k.A, k.B, c.slack.c_osc);
        const auto o = osc::OscillatoryRational::quadruple(k.v, k.t, k.A, k.B, k.V);
        return k.balanced ? osc::vdc_bound_check_v5(o, c.slack.c_osc) : osc::vdc_bound_check_v4(o, c.slack.c_osc);
    });
    for (const auto& o : reps) r.add_row(osc_row(o), c.store_all);
    if (degree_one) {
        add_trend(r, reps, "D1", c.slack.trend_tolerance);
    } else {
        add_trend(r, reps, "V4", c.slack.trend_tolerance);
        add_trend(r, reps, "V5", c.slack.trend_tolerance);
    }
}

// ---------------------------------------------------------------- lemma6, lemma9

std::vector<std::array<i64, 4>> quad_grid(i64 vmax) {
    if (vmax < 1) throw ConfigError("vmax must be at least 1");
    std::vector<std::array<i64, 4>> out;
    for (i64 a = 1; a <= vmax; ++a)
        for (i64 b = 1; b <= vmax; ++b)
            for (i64 cc = 1; cc <= vmax; ++cc)
                for (i64 d = 1; d <= vmax; ++d) out.push_back({a, b, cc, d});
    return out;
}

void suite_lemma6(const Ctx& c, Report& r) {
    r.columns = {"q", "char", "v", "class", "abs_sum", "rhs_core", "ratio", "pass", "literal_pass", "doubled_pass"};
    const auto quads = quad_grid(as_ints(c.get("vmax"), "vmax").front());
    std::vector<DirichletCharacter> chars;
    for (i64 pk : as_ints(c.get("pk"), "pk")) {
        if (pk < 2) throw ConfigError("lemma6: pk must be a prime power");
        const auto fm = arith::factorize(static_cast<u64>(pk));
        if (fm.factors().size() != 1) throw ConfigError("lemma6: " + std::to_string(pk) + " is not a prime power");
        for (const auto& chi : CharacterGroup(static_cast<u64>(pk)).primitive_characters()) chars.push_back(chi);
    }
    const auto parts = parallel_map<Rows>(chars.size(), c.jobs, [&](std::size_t i) {
        Rows rows;
        for (const auto& v : quads) {
            const auto qd = charsums::classify_quadruple(v[0], v[1], v[2], v[3]);
            const auto rep = charsums::burgess_prime_power_check(chars[i], qd);
            if (rep.skipped) continue;
            rows.push_back(json::array({rep.q, rep.char_index, quad_json(v), charsums::to_string(rep.cls), rep.abs_sum,
                                        rep.rhs_core, rep.ratio, rep.pass, rep.reading_pass[0], rep.reading_pass[1]}));
        }
        return rows;
    });
    add_all(r, parts, c.store_all);
}

void suite_lemma9(const Ctx& c, Report& r) {
    r.columns = {"q", "char", "v", "class", "abs_sum", "rhs_core", "ratio", "slack", "paths_agree", "pass"};
    const i64 vmax = as_ints(c.get("vmax"), "vmax").front();
    const auto quads = quad_grid(vmax);
    std::vector<DirichletCharacter> chars;
    for (i64 q : as_ints(c.get("q"), "q")) {
        if (q < 2) throw ConfigError("lemma9: q must be at least 2");
        for (const auto& chi : CharacterGroup(static_cast<u64>(q)).primitive_characters()) chars.push_back(chi);
    }
    struct Part {
        Rows rows;
        std::size_t pair_cases = 0, pair_failures = 0;
    };
    const auto parts = parallel_map<Part>(chars.size(), c.jobs, [&](std::size_t i) {
        Part p;
        const auto& chi = chars[i];
        for (const auto& v : quads) {
            const auto qd = charsums::classify_quadruple(v[0], v[1], v[2], v[3]);
            if (qd.delta == 0) continue;
            const auto rep = charsums::burgess_general_check(chi, qd, c.slack);
            p.rows.push_back(json::array({rep.q, rep.char_index, quad_json(v), charsums::to_string(rep.cls),
                                          rep.abs_sum, rep.rhs_core, rep.ratio, c.slack.slack(rep.q), rep.paths_agree,
                                          rep.pass && rep.paths_agree}));
        }
        for (i64 v1 = 1; v1 <= vmax; ++v1)
            for (i64 v4 = 1; v4 <= vmax; ++v4) {
                if (v1 == v4) continue;
                const auto pr = charsums::degenerate_pair_sum_check(chi, v1, v4);
                ++p.pair_cases;
                if (!pr.pass || !pr.matches_ramanujan) ++p.pair_failures;
            }
        return p;
    });
    std::size_t pc = 0, pf = 0;
    for (const auto& p : parts) {
        for (const auto& row : p.rows) r.add_row(row, c.store_all);
        pc += p.pair_cases;
        pf += p.pair_failures;
    }
    r.checks.push_back({"degenerate pair sums", pf == 0,
                        std::to_string(pf) + " of " + std::to_string(pc) +
                            " pairs exceed (q, v1 - v4) or differ from the Ramanujan sum"});
}

// ---------------------------------------------------------------- lemma7

std::vector<arith::PrimePower> prime_powers_upto(u64 limit) {
    std::vector<arith::PrimePower> out;
    for (u64 p = 2; p <= limit; ++p) {
        if (!arith::is_prime(p)) continue;
        u64 pk = p;
        for (int a = 1; pk <= limit; ++a) {
            out.push_back({p, a});
            if (pk > limit / p) break;
            pk *= p;
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.value() < y.value(); });
    return out;
}

void suite_lemma7(const Ctx& c, Report& r) {
    r.columns = {"p", "alpha", "poly", "disc", "roots", "bound", "ratio", "paths_agree", "literal_pass", "pass"};
    const i64 lo = as_ints(c.get("cmin"), "cmin").front(), hi = as_ints(c.get("cmax"), "cmax").front();
    const i64 pkmax = as_ints(c.get("pkmax"), "pkmax").front();
    if (lo > hi || pkmax < 2) throw ConfigError("lemma7: need cmin <= cmax and pkmax >= 2");
    const auto pps = prime_powers_upto(static_cast<u64>(pkmax));
    const auto parts = parallel_map<Rows>(pps.size(), c.jobs, [&](std::size_t i) {
        Rows rows;
        const auto pp = pps[i];
        for (i64 a = lo; a <= hi; ++a) {
            if (a == 0) continue;
            for (i64 b = lo; b <= hi; ++b)
                for (i64 cc = lo; cc <= hi; ++cc) {
                    const auto f = arith::IntPolynomial::quadratic(a, b, cc);
                    if (f.discriminant() == 0) continue;
                    const auto rep = arith::huxley_bound_check(f, pp.p, pp.alpha);
                    if (rep.skipped) continue;
                    const auto ex = arith::count_roots_exhaustive(f, pp.p, pp.alpha);
                    const auto li = arith::count_roots_lifting(f, pp.p, pp.alpha);
                    const bool agree = ex.count == li.count && ex.identically_zero == li.identically_zero;
                    const double ratio = rep.bound > 0 ? static_cast<double>(rep.reduced_roots) / rep.bound : 0.0;
                    rows.push_back(json::array({pp.p, pp.alpha, json::array({a, b, cc}),
                                                static_cast<std::int64_t>(rep.discriminant), rep.roots, rep.bound,
                                                ratio, agree, rep.literal_pass, rep.pass && agree}));
                }
        }
        return rows;
    });
    add_all(r, parts, c.store_all);
}

// ---------------------------------------------------------------- lemma10

void suite_lemma10(const Ctx& c, Report& r) {
    r.columns = {"kind", "q", "char", "V", "C", "t", "alpha", "lhs", "lhs_expanded", "rel_diff", "core", "ratio",
                 "slack", "pass"};
    struct Case {
        DirichletCharacter chi;
        i64 V;
        double t, alpha, A, B;
    };
    std::vector<Case> cases;
    const i64 limit = as_ints(c.get("chars"), "chars").front();
    for (i64 q : as_ints(c.get("q"), "q")) {
        if (q < 2) throw ConfigError("lemma10: q must be at least 2");
        auto chars = CharacterGroup(static_cast<u64>(q)).primitive_characters();
        if (limit > 0 && static_cast<i64>(chars.size()) > limit) chars.erase(chars.begin() + limit, chars.end());
        for (i64 V : as_ints(c.get("V"), "V"))
            for (double t : c.get("t"))
                for (double alpha : c.get("alpha"))
                    for (double A : c.get("A"))
                        for (double B : c.get("B")) {
                            if (V < 2 || t < 1 || !(B > A) || A < 0 || B > osc::kIntervalScale * V)
                                throw ConfigError("lemma10: need V >= 2, t >= 1, 0 <= A < B <= 8V");
                            for (const auto& chi : chars) cases.push_back({chi, V, t, alpha, A, B});
                        }
    }
    const auto parts = parallel_map<Rows>(cases.size(), c.jobs, [&](std::size_t i) {
        const auto& k = cases[i];
        meanvalue::MomentParams p;
        p.V = k.V;
        p.t = k.t;
        p.alpha = k.alpha;
        p.A = k.A;
        p.B = k.B;
        Rows rows;
        const u64 q = k.chi.modulus();
        double fixed_max = 0.0;
        for (i64 C = 1; C <= meanvalue::window_span(k.V); ++C) {
            const auto m = meanvalue::bbbbb_check(k.chi, C, p, c.slack, true);
            fixed_max = std::max(fixed_max, m.lhs);
            rows.push_back(json::array({"fixed", q, m.char_index, k.V, C, k.t, k.alpha, m.lhs, m.lhs_expanded,
                                        m.rel_diff, m.core, m.ratio, m.slack,
                                        m.pass && m.rel_diff <= kDualPathTolerance}));
        }
        const auto mx = meanvalue::max_window_check(k.chi, p, c.slack);
        const bool dominates = mx.lhs >= fixed_max * (1.0 - 1e-9);
        rows.push_back(json::array({"max", q, mx.char_index, k.V, -1, k.t, k.alpha, mx.lhs, nullptr, nullptr, mx.core,
                                    mx.ratio, mx.slack, mx.pass && dominates}));
        const auto mj = meanvalue::dyadic_majorant_check(k.chi, p);
        const double mcore = mj.holder_factor * mj.block_sum;
        rows.push_back(json::array({"majorant", q, k.chi.index(), k.V, -1, k.t, k.alpha, mj.lhs, nullptr, nullptr,
                                    mcore, mcore > 0 ? mj.lhs / mcore : 0.0, nullptr, mj.pass}));
        // Pointwise Hoelder split on a lambda x x sample.
        meanvalue::HolderReport hr;
        for (u64 lambda = 0; lambda < q; lambda += std::max<u64>(1, q / 7))
            for (int j = 0; j < 9; ++j) {
                const double x = k.A + (k.B - k.A) * j / 8.0;
                const auto h = meanvalue::holder_check(k.chi, lambda, x, p);
                hr.cases += h.cases;
                hr.failures += h.failures;
                hr.r_cubed_cases += h.r_cubed_cases;
                hr.r_cubed_failures += h.r_cubed_failures;
                hr.worst_ratio = std::max(hr.worst_ratio, h.worst_ratio);
            }
        rows.push_back(json::array({"holder", q, k.chi.index(), k.V, -1, k.t, k.alpha, hr.cases, nullptr, nullptr,
                                    nullptr, hr.worst_ratio, nullptr, hr.pass()}));
        return rows;
    });
    add_all(r, parts, c.store_all);
}

// ---------------------------------------------------------------- theorem1

std::vector<i64> m_samples(i64 N, int count) {
    std::vector<i64> out;
    for (int k = 0; k < count; ++k)
        out.push_back(count == 1 ? N : N + static_cast<i64>(std::llround(static_cast<double>(k) * N / (count - 1))));
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::string chain_detail(const amplify::ChainReport& ch) {
    std::ostringstream d;
    const auto f = [](double x) { return report::format_number(x); };
    d << "U=" << ch.U << " V=" << ch.V << " lhs=" << f(ch.lhs) << " amplified_exact=" << ch.amplified_exact
      << " tent_literal_exact=" << ch.tent_literal_exact << " W=" << f(ch.W) << " amp_rhs=" << f(ch.amplification_rhs)
      << " sg_fail=" << ch.sg_failures << "/" << ch.sg_cases << " W<=sg=" << ch.w_sg_pass
      << " holder_fail=" << ch.holder_failures << "/" << ch.holder_cases << " gprime_fail=" << ch.gprime_failures
      << "/" << ch.gprime_cases << " gprime_literal_fail=" << ch.gprime_literal_failures
      << " sumI=" << ch.sum_I << " b1_exact=" << ch.b1_exact << " sumI2=" << ch.sum_I2
      << " b2_ratio=" << f(ch.b2_ratio) << " W^4=" << f(std::pow(ch.W, 4)) << " chain_rhs=" << f(ch.chain_rhs)
      << " mv_ratio=" << f(ch.lemma10_ratio) << " B/V=" << f(ch.interval_over_v);
    return d.str();
}

void suite_theorem1(const Ctx& c, Report& r) {
    r.columns = {"q", "char", "t", "M", "N", "U", "V", "lhs", "core", "ratio", "slack", "hypotheses", "pass"};
    struct Case {
        u64 q;
        double t;
        i64 N;
        std::vector<i64> Ms;
    };
    std::vector<Case> cases;
    const int ms = static_cast<int>(as_ints(c.get("msamples"), "msamples").front());
    if (ms < 1) throw ConfigError("theorem1: msamples must be positive");
    for (i64 q : as_ints(c.get("q"), "q"))
        for (double t : c.get("t")) {
            if (q < 3 || t < 1) throw ConfigError("theorem1: need q >= 3 and t >= 1");
            std::vector<i64> Ns;
            if (c.has("N")) {
                Ns = as_ints(c.get("N"), "N");
            } else {
                try {
                    Ns = {amplify::theorem1_mid_n(static_cast<u64>(q), t)};
                } catch (const std::invalid_argument& e) {
                    throw ConfigError(e.what());
                }
            }
            for (i64 N : Ns) cases.push_back({static_cast<u64>(q), t, N, m_samples(N, ms)});
        }
    struct Part {
        Rows rows;
        std::vector<report::Check> checks;
    };
    const auto parts = parallel_map<Part>(cases.size(), c.jobs, [&](std::size_t i) {
        const auto& k = cases[i];
        Part p;
        const auto chars = CharacterGroup(k.q).primitive_characters();
        if (chars.empty()) throw ConfigError("theorem1: q has no primitive characters");
        for (i64 M : k.Ms) {
            amplify::AmplificationConfig cfg;
            try {
                cfg = amplify::AmplificationConfig::make(k.q, k.t, M, k.N, c.permissive);
            } catch (const std::invalid_argument& e) {
                throw ConfigError(e.what());
            }
            for (const auto& chi : chars) {
                const auto rep = amplify::theorem1_check(k.q, k.t, k.N, M, chi, c.slack, c.permissive);
                p.rows.push_back(json::array({rep.q, rep.char_index, rep.t, rep.M, rep.N, rep.U, rep.V, rep.lhs,
                                              rep.core, rep.ratio, rep.slack, rep.hypotheses, rep.pass}));
            }
            const std::string tag = "q=" + std::to_string(k.q) + " t=" + report::format_number(k.t) +
                                    " N=" + std::to_string(k.N) + " M=" + std::to_string(M);
            const auto ch = amplify::amplification_chain(cfg, chars.front(), c.slack);
            p.checks.push_back({"chain " + tag + " char=" + std::to_string(chars.front().index()), ch.pass(),
                                chain_detail(ch)});
            const auto om = amplify::build_omega_partition(cfg);
            p.checks.push_back({"partition " + tag, om.h_range_ok && om.total_pairs == om.expected_pairs,
                                "h in [" + std::to_string(om.h_min) + ", " + std::to_string(om.h_max) + "], bound " +
                                    report::format_number(om.h_bound)});
        }
        std::vector<double> ys;
        for (int j = -400; j <= 400; ++j) ys.push_back(j * 0.05 * static_cast<double>(k.N) / 8.0);
        const auto cfg0 = amplify::AmplificationConfig::make(k.q, k.t, k.Ms.front(), k.N, true);
        const auto kr = amplify::fourier_kernel_check(k.N, cfg0.U, ys, c.slack);
        p.checks.push_back({"kernel N=" + std::to_string(k.N) + " U=" + std::to_string(cfg0.U), kr.pass,
                            "worst ratio " + report::format_number(kr.worst_ratio) + ", integral " +
                                report::format_number(kr.kernel_integral) + " <= " +
                                report::format_number(kr.log_bound)});
        return p;
    });
    for (const auto& p : parts) {
        for (const auto& row : p.rows) r.add_row(row, c.store_all);
        r.checks.insert(r.checks.end(), p.checks.begin(), p.checks.end());
    }
}

// ---------------------------------------------------------------- exponent-scan

void suite_scan(const Ctx& c, Report& r) {
    r.columns = {"q", "t", "N", "best_M", "best_char", "max_normalized", "residual"};
    std::vector<std::pair<u64, double>> family;
    for (i64 q : as_ints(c.get("q"), "q"))
        for (double t : c.get("t")) {
            if (q < 3 || t < 1) throw ConfigError("exponent-scan: need q >= 3 and t >= 1");
            family.emplace_back(static_cast<u64>(q), t);
        }
    const int ms = static_cast<int>(as_ints(c.get("msamples"), "msamples").front());
    amplify::ScanResult base, dense;
    try {
        base = amplify::exponent_scan(family, ms);
        dense = amplify::exponent_scan(family, 2 * ms);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    for (const auto& s : base.cases)
        r.add_row(json::array({s.q, s.t, s.N, s.best_M, s.best_char, s.max_normalized, s.residual}), true);
    r.checks.push_back({"slope", base.slope <= kScanSlopeTarget,
                        "slope " + report::format_number(base.slope) + " <= " + report::format_number(kScanSlopeTarget) +
                            " over " + report::format_number(base.decades) + " decades"});
    r.checks.push_back({"stability", std::abs(dense.slope - base.slope) < kScanStability,
                        "slope with " + std::to_string(2 * ms) + " M samples " + report::format_number(dense.slope)});
}

using Runner = void (*)(const Ctx&, Report&);

Runner runner_for(const std::string& id) {
    if (id == "lemma1") return suite_lemma1;
    if (id == "lemma2") return suite_lemma2;
    if (id == "lemma3") return suite_lemma3;
    if (id == "lemma4") return [](const Ctx& c, Report& r) { suite_oscillatory(c, r, false); };
    if (id == "lemma5") return [](const Ctx& c, Report& r) { suite_oscillatory(c, r, true); };
    if (id == "lemma6") return suite_lemma6;
    if (id == "lemma7") return suite_lemma7;
    if (id == "lemma9") return suite_lemma9;
    if (id == "lemma10") return suite_lemma10;
    if (id == "theorem1") return suite_theorem1;
    if (id == "exponent-scan") return suite_scan;
    throw ConfigError("unknown suite " + id);
}

double parse_number(const std::string& s) {
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw ConfigError("not a number: '" + s + "'");
    }
    if (used != s.size()) throw ConfigError("not a number: '" + s + "'");
    return v;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

void append_item(const std::string& raw, std::vector<double>& out) {
    const std::string item = trim(raw);
    if (item.empty()) throw ConfigError("empty range item");
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
        out.push_back(parse_number(item));
        return;
    }
    const double a = parse_number(item.substr(0, dots));
    std::string rest = item.substr(dots + 2);
    double step = 1.0;
    if (const auto colon = rest.find(':'); colon != std::string::npos) {
        step = parse_number(rest.substr(colon + 1));
        rest = rest.substr(0, colon);
    }
    const double b = parse_number(rest);
    if (!(step > 0)) throw ConfigError("range step must be positive");
    if (a > b) throw ConfigError("empty range " + item);
    const auto n = static_cast<i64>(std::floor((b - a) / step + 1e-9));
    if (n > 10000000) throw ConfigError("range too long: " + item);
    for (i64 k = 0; k <= n; ++k) out.push_back(a + static_cast<double>(k) * step);
}

}  // namespace

const std::vector<SuiteInfo>& suite_list() { return build_list(); }

const SuiteInfo& suite_info(const std::string& id) {
    for (const auto& s : suite_list())
        if (s.id == id) return s;
    throw ConfigError("unknown suite '" + id + "'");
}

std::vector<double> parse_range(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    if (trim(text).empty()) throw ConfigError("empty range");
    while (std::getline(ss, item, ',')) append_item(item, out);
    if (out.empty()) throw ConfigError("empty range");
    return out;
}

void parse_grid(const std::string& text, Grid& grid) {
    std::stringstream ss(text);
    std::string item;
    std::string key;
    std::map<std::string, std::vector<double>> fresh;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq != std::string::npos) {
            key = trim(item.substr(0, eq));
            if (key.empty()) throw ConfigError("grid item without key: '" + item + "'");
            auto& vals = fresh[key];
            vals.clear();
            const std::string value = trim(item.substr(eq + 1));
            if (value.empty()) throw ConfigError("empty grid for key " + key);
            append_item(value, vals);
        } else {
            if (key.empty()) throw ConfigError("grid item without key: '" + item + "'");
            append_item(item, fresh[key]);
        }
    }
    if (fresh.empty()) throw ConfigError("empty grid specification");
    for (auto& [k, v] : fresh) grid[k] = std::move(v);
}

Report run_suite(const SuiteConfig& config, const report::Manifest& manifest) {
    const SuiteInfo& info = suite_info(config.suite);
    if (config.jobs < 1) throw ConfigError("jobs must be at least 1");
    Ctx ctx{&info, info.defaults, manifest.slack, config.seed, config.jobs, config.permissive, !config.failures_only};
    std::vector<std::string> extra;
    if (const auto it = optional_keys().find(info.id); it != optional_keys().end()) extra = it->second;
    for (const auto& [k, v] : config.grid) {
        if (!info.defaults.count(k) && std::find(extra.begin(), extra.end(), k) == extra.end())
            throw ConfigError("suite " + info.id + " has no grid key '" + k + "'");
        if (v.empty()) throw ConfigError("empty grid for key " + k);
        ctx.grid[k] = v;
    }
    Report r;
    r.suite = info.id;
    r.seed = config.seed;
    for (const auto& [k, v] : ctx.grid) r.grid[k] = v;
    r.manifest = manifest.to_json();
    try {
        runner_for(info.id)(ctx, r);
    } catch (const quad::ResourceExhausted& e) {
        r.exhausted = true;
        r.exhausted_what = e.what();
    } catch (const lfunc::TermBudgetExceeded& e) {
        r.exhausted = true;
        r.exhausted_what = e.what();
    }
    return r;
}

int exit_code(const Report& r) {
    if (r.exhausted) return kExitExhausted;
    return r.failures() == 0 ? kExitPass : kExitFailure;
}

namespace {

double column_max(const Report& r, const std::function<double(const json&)>& f) {
    double m = 0.0;
    for (const auto& row : r.rows) m = std::max(m, f(row));
    return m;
}

std::size_t column(const Report& r, const std::string& name) {
    const auto it = std::find(r.columns.begin(), r.columns.end(), name);
    if (it == r.columns.end()) throw std::logic_error("calibrate: missing column " + name);
    return static_cast<std::size_t>(it - r.columns.begin());
}

// ratio * c0 / slack: the part of the ratio the c0 factor has to cover.
double normalized_c0(const Report& r, double c0) {
    const auto ir = column(r, "ratio"), is = column(r, "slack");
    return column_max(r, [&](const json& row) {
        if (!row[ir].is_number() || !row[is].is_number()) return 0.0;
        return row[ir].get<double>() * c0 / row[is].get<double>();
    });
}

}  // namespace

report::Manifest calibrate(std::uint64_t seed, int jobs) {
    const SlackPolicy defaults;
    report::Manifest m;
    m.seed = seed;
    report::Manifest probe;  // defaults, so no calibration row is dropped by a failed check
    const auto run = [&](const std::string& id, Grid g) {
        SuiteConfig cfg;
        cfg.suite = id;
        cfg.grid = std::move(g);
        cfg.seed = seed;
        cfg.jobs = jobs;
        return run_suite(cfg, probe);
    };

    const Report l4 = run("lemma4", {{"V", {8}}, {"t", {10, 20}}});
    const Report l5 = run("lemma5", {{"V", {4, 8}}, {"t", {10, 20}}});
    m.observed["c_osc"] = std::max(l4.max_ratio, l5.max_ratio);

    double c0_obs = 0.0;
    c0_obs = std::max(c0_obs, normalized_c0(run("lemma1", {{"q", {7, 30, 97, 210}}, {"N", {8, 64}}, {"U", {4, 16}}}),
                                            defaults.c0));
    c0_obs = std::max(c0_obs, normalized_c0(run("lemma9", {{"q", {15, 21}}, {"vmax", {4}}}), defaults.c0));
    c0_obs = std::max(c0_obs, normalized_c0(run("lemma10", {{"q", {13}}, {"t", {30}}, {"alpha", {0}}, {"chars", {2}}}),
                                            defaults.c0));
    c0_obs = std::max(c0_obs, normalized_c0(run("theorem1", {{"q", {53}}, {"t", {2}}, {"msamples", {2}}}), defaults.c0));
    m.observed["c0"] = c0_obs;

    double cf = 0.0, cl = 0.0;
    std::vector<double> ys;
    for (int j = -2000; j <= 2000; ++j) ys.push_back(j * 0.01);
    for (i64 N : {1, 2, 3, 8, 64})
        for (i64 U : {1, 2, 4, 16}) {
            const auto kr = amplify::fourier_kernel_check(N, U, ys, defaults);
            cf = std::max(cf, kr.worst_ratio);
            cl = std::max(cl, kr.kernel_integral / (1.0 + std::log(static_cast<double>(N)) +
                                                    std::log(static_cast<double>(U))));
        }
    m.observed["c_fourier"] = cf;
    m.observed["c_log"] = cl;

    m.slack = defaults;
    m.slack.c_osc = std::max(defaults.c_osc, 2.0 * m.observed["c_osc"]);
    m.slack.c0 = std::max(defaults.c0, 2.0 * m.observed["c0"]);
    m.slack.c_fourier = std::max(defaults.c_fourier, 2.0 * m.observed["c_fourier"]);
    m.slack.c_log = std::max(defaults.c_log, 2.0 * m.observed["c_log"]);
    return m;
}

}  // namespace critline::suites
