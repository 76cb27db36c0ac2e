#pragma once

// Explicit stand-ins for implied constants and q^{o(1)} factors. Every check
// that would otherwise hide a constant compares against one of these.

#include <cmath>
#include <cstdint>

#include "critline/arith.hpp"

namespace critline {

struct SlackPolicy {
    // slack(q) = c0 * d(q)^divisor_power
    double c0 = 4.0;
    double divisor_power = 1.0;
    // slack(X) = c0 * X^epsilon for X = qV or qt
    double epsilon = 0.1;
    // Oscillatory integral bounds for F^{it}.
    double c_osc = 32.0;
    // Tent transform against min(N, 1/|y|, U/y^2).
    double c_fourier = 1.0;
    // Kernel integral against 1 + log N + log U.
    double c_log = 4.0;
    // Allowed growth of a grid-max ratio when t doubles.
    double trend_tolerance = 1.05;

    double slack(std::uint64_t q) const {
        return c0 * std::pow(static_cast<double>(arith::divisor_count(q)), divisor_power);
    }
    double slack_scale(double x) const { return c0 * std::pow(x, epsilon); }
};

}  // namespace critline
