#include "tzone/krugman.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "tzone/errors.hpp"

namespace tzone {

KrugmanParams solve_pasting(double m, double gamma, double sigma, double barrier) {
    if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be > 0");
    if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be > 0");
    if (!std::isfinite(m) || !std::isfinite(barrier))
        throw std::invalid_argument("m and barrier must be finite");

    KrugmanParams p;
    p.m = m;
    p.gamma = gamma;
    p.sigma = sigma;
    p.barrier = barrier;
    p.rho = std::sqrt(2.0 / (gamma * sigma * sigma));
    // ds/dv = 1 - A rho e^{-rho v} = 0 at v_lower gives A = e^{rho v_lower}/rho;
    // substituting into s(v_lower) = barrier collapses to v_lower = barrier - m - 1/rho.
    p.v_lower = barrier - m - 1.0 / p.rho;
    const double log_a = p.rho * (barrier - m) - 1.0 - std::log(p.rho);
    // A itself must stay a normal double; the curve evaluation only ever uses
    // exp(-rho (v - v_lower)), which cannot overflow.
    if (std::abs(log_a) > 600.0)
        throw std::invalid_argument("pasting constant out of double range for these parameters");
    p.pasting_a = std::exp(log_a);

    // Re-derive both pasting conditions through the explicit constant.
    const double decay_at_floor = p.pasting_a * std::exp(-p.rho * p.v_lower);
    const double pasting_value = p.m + p.v_lower + decay_at_floor - barrier;
    const double pasting_slope = 1.0 - p.rho * decay_at_floor;
    if (std::abs(pasting_value) > 1e-10 || std::abs(pasting_slope) > 1e-10)
        throw NumericalError("smooth pasting conditions not met to tolerance");
    return p;
}

double s_of_v(const KrugmanParams& p, double v) {
    if (v <= p.v_lower) return p.barrier;  // money supply holds s at the floor
    return p.m + v + std::exp(-p.rho * (v - p.v_lower)) / p.rho;
}

double v_of_s(const KrugmanParams& p, double s) {
    if (s < p.barrier) throw std::domain_error("s below the barrier");
    if (s == p.barrier) return p.v_lower;

    // s_of_v is strictly increasing above v_lower with asymptote m + v, so a
    // geometric bracket expansion always terminates.
    double lo = p.v_lower;
    double span = std::max(1.0, 10.0 / p.rho) + (s - p.barrier);
    double hi = lo + span;
    while (s_of_v(p, hi) < s) {
        span *= 2.0;
        hi = lo + span;
        if (!std::isfinite(hi)) throw NumericalError("v_of_s bracket expansion failed");
    }

    // Newton with bisection safeguard.
    double v = 0.5 * (lo + hi);
    for (int iter = 0; iter < 200; ++iter) {
        const double resid = s_of_v(p, v) - s;
        if (resid > 0.0) hi = v; else lo = v;
        const double slope = 1.0 - std::exp(-p.rho * (v - p.v_lower));
        double next = slope > 0.0 ? v - resid / slope : v;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - v) < 1e-12 * std::max(1.0, std::abs(v))) return next;
        v = next;
    }
    return v;
}

std::pair<double, double> drift_vol_in_v(const KrugmanParams& p, double v) {
    // A rho e^{-rho v} written through the pasting point, where it equals one
    const double decay = std::exp(-p.rho * (v - p.v_lower));
    const double f = 0.5 * p.sigma * p.sigma * p.rho * decay;
    const double g = p.sigma * (1.0 - decay);
    return {f, g};
}

std::pair<double, double> local_expansion(const KrugmanParams& p) {
    const double alpha = p.sigma / std::sqrt(2.0 * p.gamma);
    const double beta = std::pow(2.0, 0.75) * std::sqrt(p.sigma) / std::pow(p.gamma, 0.25);
    return {alpha, beta};
}

std::vector<KrugmanCurvePoint> sample_curve(const KrugmanParams& p, double v_min, double v_max,
                                            int n_points) {
    if (n_points < 2) throw std::invalid_argument("need at least 2 curve points");
    if (!(v_min < v_max)) throw std::invalid_argument("v_min must be < v_max");
    std::vector<KrugmanCurvePoint> curve;
    curve.reserve(static_cast<std::size_t>(n_points));
    const double step = (v_max - v_min) / (n_points - 1);
    for (int i = 0; i < n_points; ++i) {
        const double v = v_min + step * i;
        curve.push_back({v, s_of_v(p, v), p.m + v});
    }
    return curve;
}

}  // namespace tzone
