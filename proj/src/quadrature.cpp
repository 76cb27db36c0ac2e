#include "critline/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace critline::quad {

namespace {

struct GaussRule {
    std::vector<double> x, w;
};

GaussRule build_rule(int n) {
    GaussRule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < n; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = z;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (z * p1 - p0) / (z * z - 1.0);
            const double dz = p1 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        r.x[i] = z;
        r.w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
    return r;
}

const GaussRule& rule() {
    static const GaussRule r = build_rule(15);
    return r;
}

}  // namespace

const std::vector<double>& gauss_legendre_nodes() { return rule().x; }
const std::vector<double>& gauss_legendre_weights() { return rule().w; }

std::vector<Panel> plan_panels(const FrequencyBound& omega, double a, double b, double phase_budget,
                               std::size_t max_panels, int min_panels) {
    std::vector<Panel> out;
    if (!(b > a)) return out;
    const double hmax = (b - a) / std::max(1, min_panels);
    double x = a;
    while (x < b) {
        // Bound taken at both ends of the candidate panel; grow once, shrink until it fits.
        auto fits = [&](double h) { return h * std::max(omega(x), omega(std::min(b, x + h))) <= phase_budget; };
        auto width_for = [&](double h) {
            const double w = std::max(omega(x), omega(std::min(b, x + h)));
            return w > 0.0 ? std::min(hmax, phase_budget / w) : hmax;
        };
        double h = width_for(hmax);
        if (const double wider = width_for(h); fits(wider)) h = wider;
        for (int k = 0; k < 64 && !fits(h); ++k) h *= 0.5;
        const double next = (b - x <= h * (1.0 + 1e-12)) ? b : x + h;
        out.push_back({x, next});
        if (out.size() > max_panels) return out;
        x = next;
    }
    return out;
}

std::vector<Panel> bisect(const std::vector<Panel>& panels) {
    std::vector<Panel> out;
    out.reserve(2 * panels.size());
    for (const auto& p : panels) {
        const double m = 0.5 * (p.a + p.b);
        out.push_back({p.a, m});
        out.push_back({m, p.b});
    }
    return out;
}

QuadratureResult integrate(const std::function<cplx(double)>& f, const FrequencyBound& omega, double a, double b,
                           const QuadratureOptions& opt) {
    QuadratureResult res;
    if (!(b > a)) return res;
    double budget = opt.phase_budget;
    for (;;) {
        const auto coarse = plan_panels(omega, a, b, budget, opt.max_panels, opt.min_panels);
        if (coarse.size() > opt.max_panels)
            throw ResourceExhausted("quadrature: panel budget exhausted before reaching tolerance", res);
        const auto fine = bisect(coarse);
        const cplx vc = integrate_on(f, coarse);
        const cplx vf = integrate_on(f, fine);
        res.value = vf;
        res.error_estimate = std::abs(vf - vc);
        res.panels = fine.size();
        const double target = std::max(opt.abs_tol, opt.rel_tol * std::abs(vf));
        if (res.error_estimate <= target) return res;
        budget *= 0.5;
    }
}

QuadratureResult integrate_real(const std::function<double(double)>& f, const FrequencyBound& omega, double a,
                                double b, const QuadratureOptions& opt) {
    return integrate([&](double x) { return cplx(f(x), 0.0); }, omega, a, b, opt);
}

}  // namespace critline::quad
