#pragma once

#include <utility>
#include <vector>

namespace tzone {

/// Solved target-zone model: s = m + v + A exp(-rho v) for v >= v_lower, with
/// A and v_lower pinned by value matching and smooth pasting at the barrier.
struct KrugmanParams {
    double m;        ///< log money supply
    double gamma;    ///< semi-elasticity, hours
    double sigma;    ///< fundamental volatility, 1/sqrt(hour)
    double barrier;  ///< log-rate floor

    // derived
    double rho;        ///< sqrt(2 / (gamma sigma^2))
    double pasting_a;  ///< A = exp(rho (barrier - m) - 1) / rho; must fit a double
    double v_lower;    ///< barrier - m - 1/rho
};

/// Closed-form smooth pasting: from ds/dv = 0 at v_lower, A = exp(rho v_lower)/rho,
/// and s(v_lower) = barrier then gives v_lower = barrier - m - 1/rho. The two
/// defining conditions are re-checked to 1e-10 on construction.
KrugmanParams solve_pasting(double m, double gamma, double sigma, double barrier);

/// Exchange rate s(v). Below v_lower the money supply adjusts to hold s at the
/// barrier, so the curve is flat there.
double s_of_v(const KrugmanParams& p, double v);

/// Inverse of s_of_v on [v_lower, inf), bisection-safeguarded Newton to 1e-12.
/// Throws std::domain_error for s below the barrier.
double v_of_s(const KrugmanParams& p, double s);

/// Drift and volatility in the fundamental variable:
/// f(v) = (1/2) A sigma^2 rho^2 exp(-rho v),  g(v) = sigma (1 - A rho exp(-rho v)).
std::pair<double, double> drift_vol_in_v(const KrugmanParams& p, double v);

/// Local expansion around the barrier: alpha = sigma / sqrt(2 gamma),
/// beta = 2^{3/4} sqrt(sigma) / gamma^{1/4}; sqrt(alpha)/beta = 1/2 identically.
std::pair<double, double> local_expansion(const KrugmanParams& p);

/// One row of the solution-curve export.
struct KrugmanCurvePoint {
    double v;
    double s;
    double free_float;  ///< m + v, the no-zone diagonal
};

/// Sample the s(v) curve and the free-float line on a uniform v grid.
std::vector<KrugmanCurvePoint> sample_curve(const KrugmanParams& p, double v_min,
                                            double v_max, int n_points);

}  // namespace tzone
