#pragma once

// Phase-controlled panel quadrature for oscillatory integrands.

#include <complex>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace critline::quad {

using cplx = std::complex<double>;

struct QuadratureResult {
    cplx value{};
    double error_estimate = 0.0;
    std::size_t panels = 0;
};

class ResourceExhausted : public std::runtime_error {
public:
    ResourceExhausted(const std::string& what, QuadratureResult partial)
        : std::runtime_error(what), partial_(partial) {}
    const QuadratureResult& partial() const { return partial_; }

private:
    QuadratureResult partial_;
};

struct Panel {
    double a, b;
};

// Upper bound for the local angular frequency of the integrand near x.
using FrequencyBound = std::function<double(double)>;

struct QuadratureOptions {
    double abs_tol = 1e-10;
    double rel_tol = 0.0;       // accepted when error <= max(abs_tol, rel_tol * |value|)
    double phase_budget = 0.7853981633974483;  // pi / 4 per panel
    std::size_t max_panels = std::size_t{1} << 20;
    int min_panels = 1;
};

/// 15-point Gauss-Legendre nodes and weights on [-1, 1].
const std::vector<double>& gauss_legendre_nodes();
const std::vector<double>& gauss_legendre_weights();

/// Panels of [a, b] on which omega * width stays below `phase_budget`.
std::vector<Panel> plan_panels(const FrequencyBound& omega, double a, double b, double phase_budget,
                               std::size_t max_panels, int min_panels = 1);

/// Each panel split at its midpoint.
std::vector<Panel> bisect(const std::vector<Panel>& panels);

template <class F>
auto integrate_on(const F& f, const std::vector<Panel>& panels) {
    using R = decltype(f(0.0));
    const auto& xs = gauss_legendre_nodes();
    const auto& ws = gauss_legendre_weights();
    R total{};
    for (const auto& p : panels) {
        const double mid = 0.5 * (p.a + p.b), half = 0.5 * (p.b - p.a);
        R acc{};
        for (std::size_t i = 0; i < xs.size(); ++i) acc += ws[i] * f(mid + half * xs[i]);
        total += half * acc;
    }
    return total;
}

/// Integral of a complex integrand. The plan is refined by halving the phase
/// budget until |coarse - bisected| meets the tolerance; throws
/// ResourceExhausted with the finest partial result when max_panels is hit.
QuadratureResult integrate(const std::function<cplx(double)>& f, const FrequencyBound& omega, double a, double b,
                           const QuadratureOptions& opt = {});

/// Real-valued convenience wrapper.
QuadratureResult integrate_real(const std::function<double(double)>& f, const FrequencyBound& omega, double a,
                                double b, const QuadratureOptions& opt = {});

}  // namespace critline::quad
