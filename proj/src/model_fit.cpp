#include "tzone/model_fit.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <json.hpp>
#include <limits>
#include <stdexcept>

#include "tzone/errors.hpp"

namespace tzone {

double chi2_1dof_pvalue(double statistic) {
    if (statistic <= 0.0) return 1.0;
    return std::erfc(std::sqrt(0.5 * statistic));
}

std::pair<double, double> fit_volatility(const KMEstimate& est, double barrier,
                                         bool count_weighted) {
    const auto n = static_cast<Eigen::Index>(est.bins.size());
    if (n < 2) throw std::invalid_argument("volatility fit needs at least 2 bins");

    Eigen::ArrayXd x(n), g(n), w(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& bin = est.bins[static_cast<std::size_t>(i)];
        if (!(bin.s_mid > barrier))
            throw std::invalid_argument("bin midpoint at or below the barrier");
        x[i] = std::sqrt(bin.s_mid - barrier);
        g[i] = bin.g_hat;
        w[i] = count_weighted ? static_cast<double>(bin.count) : 1.0;
    }
    w /= w.mean();  // unit-mean weights so the residual variance keeps its scale

    const double sxx = (w * x.square()).sum();
    const double beta = (w * g * x).sum() / sxx;
    const double rss = (w * (g - beta * x).square()).sum();
    const double se = std::sqrt(rss / static_cast<double>(n - 1) / sxx);
    return {beta, se};
}

std::pair<double, double> fit_drift(const KMEstimate& est) {
    const auto n = static_cast<Eigen::Index>(est.bins.size());
    if (n < 2) throw std::invalid_argument("drift fit needs at least 2 bins");

    double weight_total = 0.0, f_sum = 0.0, var_sum = 0.0;
    for (const auto& bin : est.bins) {
        const double n_b = static_cast<double>(bin.count);
        weight_total += n_b;
        f_sum += n_b * bin.f_hat;
        // Var(f_hat) per bin is g^2 / (tau N); propagate through the weights.
        var_sum += n_b * bin.g_hat * bin.g_hat;
    }
    const double alpha = f_sum / weight_total;
    const double se = std::sqrt(var_sum / est.tau_hours) / weight_total;
    return {alpha, se};
}

FitReport fit_model(const KMEstimate& est, double barrier, bool count_weighted) {
    FitReport report;
    report.barrier = barrier;
    std::tie(report.beta_hat, report.beta_se) = fit_volatility(est, barrier, count_weighted);
    std::tie(report.alpha_hat, report.alpha_se) = fit_drift(est);
    if (report.alpha_hat > 0.0) {
        const double ratio = std::sqrt(report.alpha_hat) / report.beta_hat;
        const double d_alpha = ratio / (2.0 * report.alpha_hat);
        const double d_beta = -ratio / report.beta_hat;
        report.ratio = ratio;
        report.ratio_se = std::sqrt(d_alpha * d_alpha * report.alpha_se * report.alpha_se +
                                    d_beta * d_beta * report.beta_se * report.beta_se);
    }
    return report;
}

RatioTest ratio_test(const FitReport& fit) {
    RatioTest test;
    if (!fit.ratio) return test;  // alpha <= 0: not applicable, by contract not an error
    test.ratio = fit.ratio;
    test.se = fit.ratio_se;
    if (*fit.ratio_se > 0.0) {
        test.z_score = (*fit.ratio - 0.5) / *fit.ratio_se;
    } else if (*fit.ratio == 0.5) {
        test.z_score = 0.0;
    }
    return test;
}

namespace {

struct ProfileFit {
    double logl;
    double alpha;
    double beta2;
};

// Closed-form alpha and beta^2 at fixed mu; the exponent is the only
// parameter left for the line search.
ProfileFit profile_at(double mu, const Eigen::ArrayXd& log_gap, const Eigen::ArrayXd& d,
                      double tau, double sum_log_gap) {
    const double n = static_cast<double>(d.size());
    const Eigen::ArrayXd inv_w = (-2.0 * mu * log_gap).exp();
    const double b_sum = inv_w.sum();
    const double alpha = (d * inv_w).sum() / (tau * b_sum);
    const double beta2 = ((d - alpha * tau).square() * inv_w).sum() / (n * tau);
    if (!(beta2 > 0.0) || !std::isfinite(beta2))
        throw NumericalError("degenerate likelihood: zero conditional variance");
    const double logl = -0.5 * n * (std::log(2.0 * M_PI * tau * beta2) + 1.0) - mu * sum_log_gap;
    return {logl, alpha, beta2};
}

// Brent line minimization on [a, b] with absolute tolerance tol.
double brent_minimize(const std::function<double(double)>& fn, double a, double b, double tol) {
    constexpr double golden = 0.3819660112501051;
    double x = a + golden * (b - a), w = x, v = x;
    double fx = fn(x), fw = fx, fv = fx;
    double d = 0.0, e = 0.0;
    for (int iter = 0; iter < 200; ++iter) {
        const double xm = 0.5 * (a + b);
        const double tol1 = tol * std::abs(x) + 1e-12;
        const double tol2 = 2.0 * tol1;
        if (std::abs(x - xm) <= tol2 - 0.5 * (b - a)) break;
        bool parabolic = false;
        if (std::abs(e) > tol1) {
            const double r = (x - w) * (fx - fv);
            double q = (x - v) * (fx - fw);
            double p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if (q > 0.0) p = -p;
            q = std::abs(q);
            const double e_old = e;
            e = d;
            if (std::abs(p) < std::abs(0.5 * q * e_old) && p > q * (a - x) && p < q * (b - x)) {
                parabolic = true;
                d = p / q;
                const double u = x + d;
                if (u - a < tol2 || b - u < tol2) d = std::copysign(tol1, xm - x);
            }
        }
        if (!parabolic) {
            e = (x >= xm ? a : b) - x;
            d = golden * e;
        }
        const double u = std::abs(d) >= tol1 ? x + d : x + std::copysign(tol1, d);
        const double fu = fn(u);
        if (fu <= fx) {
            if (u >= x) a = x; else b = x;
            v = w; fv = fw;
            w = x; fw = fx;
            x = u; fx = fu;
        } else {
            if (u < x) a = u; else b = u;
            if (fu <= fw || w == x) {
                v = w; fv = fw;
                w = u; fw = fu;
            } else if (fu <= fv || v == x || v == w) {
                v = u; fv = fu;
            }
        }
    }
    return x;
}

}  // namespace

LRTestReport lr_test(const TimeSeries& series, double barrier, const LRTestOptions& opts) {
    series.validate();
    const Eigen::Index n_inc = series.size() - 1;
    if (n_inc < 100) throw std::invalid_argument("lr_test needs at least 100 increments");
    if (!(opts.mu_lo < opts.mu_hi)) throw std::invalid_argument("mu bracket must be ordered");

    const double tau = series.tau_hours;
    const Eigen::ArrayXd gap =
        (series.values.head(n_inc) - barrier).max(opts.gap_floor);
    const Eigen::ArrayXd d = series.values.tail(n_inc) - series.values.head(n_inc);
    if ((d == d[0]).all())
        throw NumericalError("degenerate likelihood: all increments identical");

    const Eigen::ArrayXd log_gap = gap.log();
    const double sum_log_gap = log_gap.sum();
    const auto logl_of = [&](double mu) {
        return profile_at(mu, log_gap, d, tau, sum_log_gap).logl;
    };

    // Coarse grid pins the basin, Brent refines inside it. The profile
    // likelihood is smooth in mu, so this finds the global maximum in
    // practice while staying derivative-free.
    constexpr int grid_n = 49;
    double best_mu = opts.mu_lo;
    double best_logl = -std::numeric_limits<double>::infinity();
    int best_idx = 0;
    const double step = (opts.mu_hi - opts.mu_lo) / (grid_n - 1);
    for (int i = 0; i < grid_n; ++i) {
        const double mu = opts.mu_lo + step * i;
        const double ll = logl_of(mu);
        if (ll > best_logl) {
            best_logl = ll;
            best_mu = mu;
            best_idx = i;
        }
    }
    const double lo = opts.mu_lo + step * std::max(0, best_idx - 1);
    const double hi = opts.mu_lo + step * std::min(grid_n - 1, best_idx + 1);
    const double mu_hat = brent_minimize([&](double mu) { return -logl_of(mu); }, lo, hi, opts.tol);

    LRTestReport report;
    const ProfileFit alt = profile_at(mu_hat, log_gap, d, tau, sum_log_gap);
    const ProfileFit null = profile_at(0.5, log_gap, d, tau, sum_log_gap);
    report.mu_hat = alt.logl >= best_logl ? mu_hat : best_mu;
    const ProfileFit at_hat = profile_at(report.mu_hat, log_gap, d, tau, sum_log_gap);
    report.beta_free = std::sqrt(at_hat.beta2);
    report.alpha_free = at_hat.alpha;
    report.logl_alt = at_hat.logl;
    report.logl_null = null.logl;
    report.lr_statistic = std::max(0.0, 2.0 * (report.logl_alt - report.logl_null));
    report.p_value = chi2_1dof_pvalue(report.lr_statistic);

    // Standard error from the observed profile curvature; one-sided stencil
    // when mu_hat sits against a bracket end.
    const double h = 1e-3 * std::max(1.0, std::abs(report.mu_hat));
    double curvature;
    if (report.mu_hat - h < opts.mu_lo) {
        curvature = (logl_of(report.mu_hat + 2 * h) - 2.0 * logl_of(report.mu_hat + h) +
                     report.logl_alt) / (h * h);
    } else if (report.mu_hat + h > opts.mu_hi) {
        curvature = (report.logl_alt - 2.0 * logl_of(report.mu_hat - h) +
                     logl_of(report.mu_hat - 2 * h)) / (h * h);
    } else {
        curvature = (logl_of(report.mu_hat + h) - 2.0 * report.logl_alt +
                     logl_of(report.mu_hat - h)) / (h * h);
    }
    report.mu_se = curvature < 0.0 ? 1.0 / std::sqrt(-curvature)
                                   : std::numeric_limits<double>::infinity();
    return report;
}

double profile_loglik(const TimeSeries& series, double barrier, double mu,
                      const LRTestOptions& opts) {
    series.validate();
    const Eigen::Index n_inc = series.size() - 1;
    if (n_inc < 2) throw std::invalid_argument("profile_loglik needs at least 2 increments");
    const Eigen::ArrayXd gap = (series.values.head(n_inc) - barrier).max(opts.gap_floor);
    const Eigen::ArrayXd d = series.values.tail(n_inc) - series.values.head(n_inc);
    const Eigen::ArrayXd log_gap = gap.log();
    return profile_at(mu, log_gap, d, series.tau_hours, log_gap.sum()).logl;
}

std::string FitReport::to_json() const {
    nlohmann::json j;
    j["beta_hat"] = beta_hat;
    j["beta_se"] = beta_se;
    j["alpha_hat"] = alpha_hat;
    j["alpha_se"] = alpha_se;
    j["barrier"] = barrier;
    if (ratio) {
        j["ratio"] = *ratio;
        j["ratio_se"] = *ratio_se;
    } else {
        j["ratio"] = nullptr;
        j["ratio_se"] = nullptr;
    }
    return j.dump(2);
}

std::string LRTestReport::to_json() const {
    nlohmann::json j;
    j["mu_hat"] = mu_hat;
    j["mu_se"] = mu_se;
    j["beta_free"] = beta_free;
    j["alpha_free"] = alpha_free;
    j["lr_statistic"] = lr_statistic;
    j["p_value"] = p_value;
    j["logl_null"] = logl_null;
    j["logl_alt"] = logl_alt;
    return j.dump(2);
}

}  // namespace tzone
