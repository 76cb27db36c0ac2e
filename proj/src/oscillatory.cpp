#include "critline/oscillatory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace critline::osc {

std::pair<cplx, cplx> RealQuadratic::roots() const {
    if (a == 0.0) throw std::invalid_argument("RealQuadratic::roots: leading coefficient is zero");
    const cplx d = std::sqrt(cplx(discriminant(), 0.0));
    // Cancellation-free pair: q = -(b + sign(b) sqrt(D)) / 2.
    const cplx qv = -0.5 * (cplx(b, 0.0) + (b >= 0 ? d : -d));
    if (std::abs(qv) == 0.0) return {cplx(0.0), cplx(0.0)};
    return {qv / a, cplx(c, 0.0) / qv};
}

double sublevel_measure_exact(const RealQuadratic& f, double eps) {
    if (f.a == 0.0) throw std::invalid_argument("sublevel_measure_exact: not a quadratic");
    if (!(eps > 0.0)) throw std::invalid_argument("sublevel_measure_exact: eps must be positive");
    // |F| is unchanged by F -> -F, so take a > 0. Then {|F| <= eps} is
    // {F <= eps} with the open interval {F < -eps} removed.
    const double s = f.a > 0 ? 1.0 : -1.0;
    const double a = s * f.a, b = s * f.b, c = s * f.c;
    auto width = [&](double level) {
        const double d = b * b - 4.0 * a * (c - level);
        return d > 0.0 ? std::sqrt(d) / a : 0.0;
    };
    return std::max(0.0, width(eps) - width(-eps));
}

PssReport pss_bound_check(const RealQuadratic& f, double eps) {
    if (!f.has_distinct_real_roots()) throw std::invalid_argument("pss_bound_check: needs distinct real roots");
    PssReport r;
    r.measure = sublevel_measure_exact(f, eps);
    // |a (alpha1 - alpha2)| = sqrt(disc)
    r.bound = 8.0 * eps / std::sqrt(f.discriminant());
    r.ratio = r.measure / r.bound;
    r.pass = r.measure <= r.bound;
    return r;
}

OscillatoryRational OscillatoryRational::quadruple(std::array<i64, 4> v, double t, double A, double B, double V) {
    OscillatoryRational o;
    o.num = {v[0], v[1]};
    o.den = {v[2], v[3]};
    o.t = t;
    o.A = A;
    o.B = B;
    o.V = V;
    return o;
}

OscillatoryRational OscillatoryRational::degree_one(i64 v1, i64 v4, double t, double A, double B, double V) {
    OscillatoryRational o;
    o.num = {v1};
    o.den = {v4};
    o.t = t;
    o.A = A;
    o.B = B;
    o.V = V;
    return o;
}

double OscillatoryRational::log_f(double x) const {
    double s = 0.0;
    for (i64 v : num) s += std::log(x + static_cast<double>(v));
    for (i64 v : den) s -= std::log(x + static_cast<double>(v));
    return s;
}

double OscillatoryRational::dlog_f(double x) const {
    double s = 0.0;
    for (i64 v : num) s += 1.0 / (x + static_cast<double>(v));
    for (i64 v : den) s -= 1.0 / (x + static_cast<double>(v));
    return s;
}

bool OscillatoryRational::in_window() const {
    auto inside = [&](i64 v) { return 2.0 * static_cast<double>(v) > V && static_cast<double>(v) <= V; };
    return std::all_of(num.begin(), num.end(), inside) && std::all_of(den.begin(), den.end(), inside);
}

void OscillatoryRational::validate() const {
    if (num.size() != den.size() || num.empty() || num.size() > 2)
        throw std::invalid_argument("OscillatoryRational: expected 2+2 or 1+1 shifts");
    for (const auto* side : {&num, &den})
        for (i64 v : *side)
            if (v <= 0 || static_cast<double>(v) > V)
                throw std::invalid_argument("OscillatoryRational: shifts must lie in (0, V]");
    if (!(t >= 1.0)) throw std::invalid_argument("OscillatoryRational: t must be at least 1");
    if (!(A >= 0.0) || !(B >= A)) throw std::invalid_argument("OscillatoryRational: need 0 <= A <= B");
    if (B > kIntervalScale * V) throw std::invalid_argument("OscillatoryRational: B exceeds 8V");
}

QuadratureResult oscillatory_integral(const OscillatoryRational& osc, double tol) {
    osc.validate();
    if (osc.B == osc.A) return {};
    const QuadratureResult r = quad::integrate([&](double x) { return std::polar(1.0, osc.t * osc.log_f(x)); },
                                               [&](double x) { return std::abs(osc.t * osc.dlog_f(x)); }, osc.A,
                                               osc.B, {.abs_tol = tol});
    if (std::abs(r.value) > (osc.B - osc.A) + 2.0 * tol + r.error_estimate)
        throw std::logic_error("oscillatory_integral: |integral| exceeds B - A");
    return r;
}

namespace {

OscReport start_report(const OscillatoryRational& osc, const char* cls) {
    OscReport r;
    r.cls = cls;
    r.v = osc.num;
    r.v.insert(r.v.end(), osc.den.begin(), osc.den.end());
    r.t = osc.t;
    r.A = osc.A;
    r.B = osc.B;
    r.V = osc.V;
    r.in_window = osc.in_window();
    return r;
}

void finish(OscReport& r, const OscillatoryRational& osc, double c_osc) {
    const auto q = oscillatory_integral(osc, kOscTolerance);
    r.integral_abs = std::abs(q.value);
    r.error_estimate = q.error_estimate;
    r.ratio = r.integral_abs / r.core;
    r.pass = r.ratio <= c_osc;
}

}  // namespace

OscReport vdc_bound_check_v4(const OscillatoryRational& osc, double c_osc) {
    if (osc.num.size() != 2) throw std::invalid_argument("vdc_bound_check_v4: needs a quadruple");
    const i64 v1 = osc.num[0], v2 = osc.num[1], v3 = osc.den[0], v4 = osc.den[1];
    const i64 delta = (v1 - v3) * (v1 - v4) * (v2 - v3) * (v2 - v4);
    if (delta == 0 || v1 + v2 == v3 + v4) throw std::invalid_argument("vdc_bound_check_v4: quadruple is not in V4");
    OscReport r = start_report(osc, "V4");
    r.core = osc.V * osc.V / (std::sqrt(osc.t) * std::pow(std::abs(static_cast<double>(delta)), 0.25));
    finish(r, osc, c_osc);
    return r;
}

OscReport vdc_bound_check_v5(const OscillatoryRational& osc, double c_osc) {
    if (osc.num.size() != 2) throw std::invalid_argument("vdc_bound_check_v5: needs a quadruple");
    const i64 v1 = osc.num[0], v2 = osc.num[1], v3 = osc.den[0], v4 = osc.den[1];
    const i64 delta = (v1 - v3) * (v1 - v4) * (v2 - v3) * (v2 - v4);
    if (delta == 0 || v1 + v2 != v3 + v4) throw std::invalid_argument("vdc_bound_check_v5: quadruple is not in V5");
    OscReport r = start_report(osc, "V5");
    const double d = std::abs(static_cast<double>((v1 - v4) * (v2 - v4)));
    r.core = std::pow(osc.V, 4) / (osc.t * d);
    finish(r, osc, c_osc);
    return r;
}

OscReport degree1_bound_check(i64 v1, i64 v4, double V, double t, double A, double B, double c_osc) {
    if (v1 == v4) throw std::invalid_argument("degree1_bound_check: v1 must differ from v4");
    const auto osc = OscillatoryRational::degree_one(v1, v4, t, A, B, V);
    OscReport r = start_report(osc, "D1");
    r.core = V * V / (t * std::abs(static_cast<double>(v1 - v4)));
    finish(r, osc, c_osc);
    return r;
}

TrendReport trend_check(const std::vector<OscReport>& rows, double tolerance) {
    TrendReport tr;
    for (const auto& r : rows) {
        auto [it, fresh] = tr.grid_max.emplace(r.t, r.ratio);
        if (!fresh) it->second = std::max(it->second, r.ratio);
    }
    for (const auto& [t, m] : tr.grid_max) {
        const auto next = tr.grid_max.find(2.0 * t);
        if (next == tr.grid_max.end()) continue;
        const bool ok = next->second <= tolerance * m;
        tr.steps.emplace_back(t, ok);
        tr.pass = tr.pass && ok;
    }
    return tr;
}

SobolevReport sobolev_gallagher_check(const std::function<cplx(double)>& f, const std::function<cplx(double)>& df,
                                      double a, double b, const quad::FrequencyBound& omega, int grid_points) {
    if (!(b > a)) throw std::invalid_argument("sobolev_gallagher_check: need b > a");
    if (grid_points < 2) throw std::invalid_argument("sobolev_gallagher_check: need at least two grid points");
    SobolevReport r;
    r.grid_points = grid_points;
    // |f| has kinks at zeros of f, so the rule converges slowly there; a
    // dense minimum plan keeps refinement short.
    const quad::QuadratureOptions opt{.abs_tol = 1e-10, .rel_tol = 1e-9, .max_panels = std::size_t{1} << 22,
                                      .min_panels = 256};
    const double abs_int = quad::integrate_real([&](double x) { return std::abs(f(x)); }, omega, a, b, opt).value.real();
    r.variation = quad::integrate_real([&](double x) { return std::abs(df(x)); }, omega, a, b, opt).value.real();
    r.mean_abs = abs_int / (b - a);
    const double rhs = r.mean_abs + r.variation;
    r.pass = true;
    for (int k = 0; k < grid_points; ++k) {
        const double u = a + (b - a) * k / (grid_points - 1);
        const double fu = std::abs(f(u));
        r.max_value = std::max(r.max_value, fu);
        const double ratio = rhs > 0 ? fu / rhs : (fu > 0 ? INFINITY : 0.0);
        r.worst_ratio = std::max(r.worst_ratio, ratio);
        if (fu > rhs * (1.0 + 1e-9) + 1e-12) r.pass = false;
    }
    return r;
}

}  // namespace critline::osc
