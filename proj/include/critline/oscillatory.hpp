#pragma once

// Sublevel sets of real quadratics, integrals of F(x)^{it} for the shifted
// rational functions, their decay bounds, and the Sobolev-Gallagher inequality.

#include <array>
#include <complex>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "critline/arith.hpp"
#include "critline/quadrature.hpp"

namespace critline::osc {

using arith::i64;
using quad::cplx;
using quad::QuadratureResult;

struct RealQuadratic {
    double a = 0.0, b = 0.0, c = 0.0;

    double discriminant() const { return b * b - 4.0 * a * c; }
    bool has_distinct_real_roots() const { return a != 0.0 && discriminant() > 0.0; }
    std::pair<cplx, cplx> roots() const;
    double operator()(double x) const { return (a * x + b) * x + c; }
};

/// Lebesgue measure of {x : |F(x)| <= eps}; throws when a == 0.
double sublevel_measure_exact(const RealQuadratic& f, double eps);

struct PssReport {
    double measure = 0.0;
    double bound = 0.0;  // 8 eps / |a (alpha1 - alpha2)|
    double ratio = 0.0;
    bool pass = false;
};

PssReport pss_bound_check(const RealQuadratic& f, double eps);

/// F(x) = prod (x + num) / prod (x + den) with two shifts on each side, or
/// one on each side for the degree-1 form.
struct OscillatoryRational {
    std::vector<i64> num;
    std::vector<i64> den;
    double t = 1.0;
    double A = 0.0, B = 1.0;
    double V = 1.0;  // declared scale

    static OscillatoryRational quadruple(std::array<i64, 4> v, double t, double A, double B, double V);
    static OscillatoryRational degree_one(i64 v1, i64 v4, double t, double A, double B, double V);

    double log_f(double x) const;
    // d/dx log F(x)
    double dlog_f(double x) const;
    // V/2 < v_i <= V for every shift.
    bool in_window() const;
    // Throws std::invalid_argument unless shifts are positive, v_i <= V,
    // 0 <= A <= B <= 8V and t >= 1.
    void validate() const;
};

inline constexpr double kIntervalScale = 8.0;  // B <= 8V

/// Integral of F(x)^{it} over [A, B] with panel width so that t log F moves
/// by at most pi/4 per panel. Asserts |value| <= B - A.
QuadratureResult oscillatory_integral(const OscillatoryRational& osc, double tol);

struct OscReport {
    std::string cls;  // "V4", "V5" or "D1"
    std::vector<i64> v;
    double t = 0.0, A = 0.0, B = 0.0, V = 0.0;
    double integral_abs = 0.0;
    double error_estimate = 0.0;
    double core = 0.0;
    double ratio = 0.0;
    bool in_window = false;
    bool pass = false;
};

inline constexpr double kOscTolerance = 1e-10;

/// V^2 t^{-1/2} |delta|^{-1/4}; requires delta != 0 and v1 + v2 != v3 + v4.
OscReport vdc_bound_check_v4(const OscillatoryRational& osc, double c_osc);
/// V^4 / (t |(v1 - v4)(v2 - v4)|); requires delta != 0 and v1 + v2 == v3 + v4.
OscReport vdc_bound_check_v5(const OscillatoryRational& osc, double c_osc);
/// V^2 / (t |v1 - v4|) for ((x+v1)/(x+v4))^{it}; requires v1 != v4.
OscReport degree1_bound_check(i64 v1, i64 v4, double V, double t, double A, double B, double c_osc);

struct TrendReport {
    std::map<double, double> grid_max;  // t -> max ratio
    // For consecutive t with t' = 2t: grid_max(t') <= tolerance * grid_max(t).
    std::vector<std::pair<double, bool>> steps;
    bool pass = true;
};

TrendReport trend_check(const std::vector<OscReport>& rows, double tolerance);

struct SobolevReport {
    double mean_abs = 0.0;       // (1/(b-a)) integral |f|
    double variation = 0.0;      // integral |f'|
    double max_value = 0.0;      // max |f(u)| over the u grid
    double worst_ratio = 0.0;    // max |f(u)| / rhs
    int grid_points = 0;
    bool pass = false;
};

/// |f(u)| <= (1/(b-a)) int |f| + int |f'| at `grid_points` equally spaced u.
/// `omega` bounds the local angular frequency of f and f'.
SobolevReport sobolev_gallagher_check(const std::function<cplx(double)>& f, const std::function<cplx(double)>& df,
                                      double a, double b, const quad::FrequencyBound& omega, int grid_points = 101);

}  // namespace critline::osc
