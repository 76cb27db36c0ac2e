#include "critline/meanvalue.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "critline/charsums.hpp"
#include "critline/oscillatory.hpp"

namespace critline::meanvalue {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// chi(lambda + v) for lambda in [0, q), v in [1, vmax].
class CharTable {
public:
    CharTable(const DirichletCharacter& chi, i64 vmax) : q_(chi.modulus()), vmax_(vmax), vals_(q_ * vmax) {
        for (u64 l = 0; l < q_; ++l)
            for (i64 v = 1; v <= vmax; ++v) vals_[l * vmax + (v - 1)] = chi(static_cast<i64>(l) + v);
    }
    u64 q() const { return q_; }
    const cplx* row(u64 lambda) const { return vals_.data() + lambda * vmax_; }  // row[v - 1]

private:
    u64 q_;
    i64 vmax_;
    std::vector<cplx> vals_;
};

// (x+v)^{it} e(alpha v) for v in [1, vmax].
void archimedean(double x, double t, double alpha, i64 vmax, std::vector<cplx>& w) {
    w.resize(vmax);
    for (i64 v = 1; v <= vmax; ++v) {
        const double dv = static_cast<double>(v);
        w[v - 1] = std::polar(1.0, t * std::log(x + dv) + kTwoPi * alpha * dv);
    }
}

cplx block(const cplx* chi_row, const std::vector<cplx>& w, i64 D, i64 C) {
    cplx s{};
    for (i64 v = D + 1; v <= D + C; ++v) s += chi_row[v - 1] * w[v - 1];
    return s;
}

double pow4(double a) { return (a * a) * (a * a); }

// Angular frequency bound for |H|^4 over shifts in [lo, hi].
quad::FrequencyBound moment_frequency(double t, i64 lo, i64 hi) {
    return [=](double x) { return 2.0 * t * (1.0 / (x + lo) - 1.0 / (x + hi)); };
}

void check_params(const MomentParams& p) {
    if (p.V < 1) throw std::invalid_argument("meanvalue: V must be at least 1");
    if (!(p.t >= 1.0)) throw std::invalid_argument("meanvalue: t must be at least 1");
    if (!(p.A >= 0.0) || !(p.B >= p.A)) throw std::invalid_argument("meanvalue: need 0 <= A <= B");
    if (p.enforce_interval && p.B > osc::kIntervalScale * static_cast<double>(p.V))
        throw std::invalid_argument("meanvalue: B exceeds 8V");
}

// max_Q |H(Q, D)|^4 over prefixes, smallest maximizing Q.
double max_prefix4(const cplx* chi_row, const std::vector<cplx>& w, i64 D, i64 span) {
    cplx s{};
    double best = 0.0;
    for (i64 k = 1; k <= span; ++k) {
        s += chi_row[D + k - 1] * w[D + k - 1];
        best = std::max(best, std::norm(s));
    }
    return best * best;
}

}  // namespace

cplx window_sum(const DirichletCharacter& chi, u64 lambda, double x, double t, double alpha, i64 D, i64 C) {
    cplx s{};
    for (i64 v = D + 1; v <= D + C; ++v) {
        const double dv = static_cast<double>(v);
        s += chi(static_cast<i64>(lambda) + v) * std::polar(1.0, t * std::log(x + dv) + kTwoPi * alpha * dv);
    }
    return s;
}

DyadicDecomposition dyadic_decompose(i64 Q, i64 V) {
    if (V < 1 || Q < 1 || Q > V) throw std::invalid_argument("dyadic_decompose: need 1 <= Q <= V");
    DyadicDecomposition d;
    d.Q = Q;
    d.V = V;
    d.R = std::bit_width(static_cast<u64>(V)) - 1;
    d.digits.assign(d.R + 1, 0);
    d.s.assign(d.R + 1, 0);
    for (int r = 0; r <= d.R; ++r) d.digits[r] = static_cast<int>((Q >> r) & 1);
    for (int r = 0; r <= d.R; ++r)
        for (int k = r + 1; k <= d.R; ++k) d.s[r] += static_cast<i64>(d.digits[k]) << (k - r);
    for (int r = d.R; r >= 0; --r)
        if (d.digits[r]) d.blocks.push_back({i64{1} << r, d.s[r] << r, r});
    return d;
}

i64 dyadic_block_mass(int R) {
    i64 total = 0;
    for (int r = 0; r <= R; ++r)
        for (i64 s = 0; s < (i64{1} << (R - r)); ++s) total += i64{1} << r;
    return total;
}

MomentValue fixed_window_fourth_moment(const DirichletCharacter& chi, i64 C, const MomentParams& p) {
    check_params(p);
    if (C < 0 || C > window_span(p.V)) throw std::invalid_argument("fixed_window_fourth_moment: C out of range");
    MomentValue out;
    if (C == 0 || p.B == p.A) return out;
    const i64 D = window_start(p.V);
    const CharTable table(chi, D + C);
    std::vector<cplx> w;
    auto integrand = [&](double x) {
        archimedean(x, p.t, p.alpha, D + C, w);
        double acc = 0.0;
        for (u64 l = 0; l < table.q(); ++l) acc += pow4(std::abs(block(table.row(l), w, D, C)));
        return acc;
    };
    const auto r = quad::integrate_real(integrand, moment_frequency(p.t, D + 1, D + C), p.A, p.B,
                                        {.abs_tol = 0.0, .rel_tol = p.rel_tol});
    return {r.value.real(), r.error_estimate, r.panels};
}

MomentValue fixed_window_fourth_moment_expanded(const DirichletCharacter& chi, i64 C, const MomentParams& p) {
    check_params(p);
    if (C < 0 || C > window_span(p.V)) throw std::invalid_argument("fixed_window_fourth_moment_expanded: C out of range");
    MomentValue out;
    if (C == 0 || p.B == p.A) return out;
    const i64 lo = window_start(p.V) + 1, hi = window_start(p.V) + C;
    cplx total{};
    for (i64 v1 = lo; v1 <= hi; ++v1)
        for (i64 v2 = lo; v2 <= hi; ++v2)
            for (i64 v3 = lo; v3 <= hi; ++v3)
                for (i64 v4 = lo; v4 <= hi; ++v4) {
                    const auto quadv = charsums::classify_quadruple(v1, v2, v3, v4);
                    const cplx s = charsums::rational_char_sum(chi, quadv).complex();
                    const auto osc = osc::OscillatoryRational::quadruple({v1, v2, v3, v4}, p.t, p.A, p.B,
                                                                         static_cast<double>(p.V));
                    const auto integral = osc::oscillatory_integral(osc, osc::kOscTolerance);
                    const double phase = kTwoPi * p.alpha * static_cast<double>(v1 + v2 - v3 - v4);
                    total += s * std::polar(1.0, phase) * integral.value;
                    out.error_estimate += std::abs(s) * integral.error_estimate;
                    out.panels += integral.panels;
                }
    out.value = total.real();
    return out;
}

MomentReport bbbbb_check(const DirichletCharacter& chi, i64 C, const MomentParams& p, const SlackPolicy& slack,
                         bool with_expanded) {
    MomentReport r;
    r.q = chi.modulus();
    r.char_index = chi.index();
    r.V = p.V;
    r.C = C;
    r.t = p.t;
    r.alpha = p.alpha;
    const double q = static_cast<double>(r.q), V = static_cast<double>(p.V);
    r.lhs = fixed_window_fourth_moment(chi, C, p).value;
    if (with_expanded) {
        r.lhs_expanded = fixed_window_fourth_moment_expanded(chi, C, p).value;
        const double scale = std::max(std::abs(r.lhs), std::abs(r.lhs_expanded));
        r.rel_diff = scale > 0 ? std::abs(r.lhs - r.lhs_expanded) / scale : 0.0;
    }
    r.core = static_cast<double>(C) * (q * V * V + std::sqrt(q) * std::pow(V, 4) / std::sqrt(p.t));
    r.slack = slack.slack_scale(q * V);
    r.ratio = r.core > 0 ? r.lhs / r.core : 0.0;
    r.pass = r.ratio <= r.slack;
    return r;
}

MomentValue max_window_fourth_moment(const DirichletCharacter& chi, const MomentParams& p) {
    check_params(p);
    MomentValue out;
    if (p.B == p.A) return out;
    const i64 D = window_start(p.V), span = window_span(p.V);
    const CharTable table(chi, D + span);
    std::vector<cplx> w;
    auto integrand = [&](double x) {
        archimedean(x, p.t, p.alpha, D + span, w);
        double acc = 0.0;
        for (u64 l = 0; l < table.q(); ++l) acc += max_prefix4(table.row(l), w, D, span);
        return acc;
    };
    const auto r = quad::integrate_real(integrand, moment_frequency(p.t, D + 1, D + span), p.A, p.B,
                                        {.abs_tol = 0.0, .rel_tol = p.rel_tol});
    return {r.value.real(), r.error_estimate, r.panels};
}

MomentReport max_window_check(const DirichletCharacter& chi, const MomentParams& p, const SlackPolicy& slack) {
    MomentReport r;
    r.q = chi.modulus();
    r.char_index = chi.index();
    r.V = p.V;
    r.t = p.t;
    r.alpha = p.alpha;
    const double q = static_cast<double>(r.q), V = static_cast<double>(p.V);
    r.lhs = max_window_fourth_moment(chi, p).value;
    r.core = q * std::pow(V, 3) + std::sqrt(q) * std::pow(V, 5) / std::sqrt(p.t);
    r.slack = slack.slack_scale(q * V);
    r.ratio = r.lhs / r.core;
    r.pass = r.ratio <= r.slack;
    return r;
}

MajorantReport dyadic_majorant_check(const DirichletCharacter& chi, const MomentParams& p) {
    check_params(p);
    MajorantReport rep;
    const i64 D = window_start(p.V), span = window_span(p.V);
    const int R = std::bit_width(static_cast<u64>(p.V)) - 1;
    const i64 reach = D + (i64{1} << R);  // last v touched by any block
    const CharTable table(chi, std::max(reach, D + span));
    rep.holder_factor = std::pow(std::max(1, R), 3);
    const auto plan = quad::bisect(
        quad::plan_panels(moment_frequency(p.t, D + 1, reach), p.A, p.B, std::numbers::pi / 16, std::size_t{1} << 20));
    std::vector<cplx> w;
    auto both = [&](double x) {
        archimedean(x, p.t, p.alpha, std::max(reach, D + span), w);
        double lhs = 0.0, blocks = 0.0;
        for (u64 l = 0; l < table.q(); ++l) {
            const cplx* row = table.row(l);
            lhs += max_prefix4(row, w, D, span);
            for (int r = 0; r <= R; ++r) {
                const i64 size = i64{1} << r;
                for (i64 s = 0; s < (i64{1} << (R - r)); ++s) blocks += pow4(std::abs(block(row, w, D + s * size, size)));
            }
        }
        return cplx(lhs, blocks);
    };
    const cplx v = quad::integrate_on(both, plan);
    rep.lhs = v.real();
    rep.block_sum = v.imag();
    rep.pass = rep.lhs <= rep.holder_factor * rep.block_sum * (1.0 + 1e-12);
    return rep;
}

HolderReport holder_check(const DirichletCharacter& chi, u64 lambda, double x, const MomentParams& p) {
    HolderReport rep;
    const i64 D = window_start(p.V), span = window_span(p.V);
    const CharTable table(chi, D + span);
    std::vector<cplx> w;
    archimedean(x, p.t, p.alpha, D + span, w);
    const cplx* row = table.row(lambda % chi.modulus());
    for (i64 Q = 1; Q <= span; ++Q) {
        const auto dec = dyadic_decompose(Q, p.V);
        const double lhs = pow4(std::abs(block(row, w, D, Q)));
        double sum = 0.0;
        for (const auto& b : dec.blocks) sum += pow4(std::abs(block(row, w, D + b.offset, b.size)));
        const double k = static_cast<double>(dec.blocks.size());
        const double rhs = k * k * k * sum;
        ++rep.cases;
        if (lhs > rhs * (1.0 + 1e-12)) ++rep.failures;
        if (rhs > 0) rep.worst_ratio = std::max(rep.worst_ratio, lhs / rhs);
        if (2 * Q <= p.V) {
            ++rep.r_cubed_cases;
            const double R3 = std::pow(static_cast<double>(dec.R), 3);
            if (lhs > R3 * sum * (1.0 + 1e-12)) ++rep.r_cubed_failures;
        }
    }
    return rep;
}

}  // namespace critline::meanvalue
