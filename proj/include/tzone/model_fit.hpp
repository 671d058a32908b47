#pragma once

#include <optional>
#include <string>

#include "tzone/km_estimator.hpp"
#include "tzone/time_series.hpp"

namespace tzone {

/// Least-squares fit of the local target-zone model to a KMEstimate.
struct FitReport {
    double beta_hat = 0.0;  ///< scale of g(s) = beta sqrt(s - barrier)
    double beta_se = 0.0;
    double alpha_hat = 0.0;  ///< constant drift
    double alpha_se = 0.0;
    double barrier = 0.0;
    /// sqrt(alpha)/beta with its delta-method error; empty when alpha_hat <= 0
    /// (the ratio is then not applicable, which is a state, not an error).
    std::optional<double> ratio;
    std::optional<double> ratio_se;

    std::string to_json() const;
};

struct RatioTest {
    std::optional<double> ratio;
    std::optional<double> se;
    std::optional<double> z_score;  ///< (ratio - 1/2) / se
};

/// One-parameter least squares of g_hat against sqrt(s_mid - barrier):
/// beta = sum(g x) / sum(x^2), standard error from the residual variance.
/// With count_weighted, bins weigh by their sample count. Throws
/// std::invalid_argument if fewer than 2 bins or any bin sits at or below the
/// barrier.
std::pair<double, double> fit_volatility(const KMEstimate& est, double barrier,
                                         bool count_weighted = false);

/// Count-weighted mean of the per-bin drift estimates. The standard error
/// propagates each bin's sampling variance g_hat^2 / (tau N_bin).
std::pair<double, double> fit_drift(const KMEstimate& est);

/// Both fits plus the ratio block.
FitReport fit_model(const KMEstimate& est, double barrier, bool count_weighted = false);

/// sqrt(alpha)/beta against the theoretical 1/2, errors by the first-order
/// delta method treating the two fits as independent.
RatioTest ratio_test(const FitReport& fit);

/// Nested likelihood-ratio test of the square-root volatility exponent.
struct LRTestReport {
    double mu_hat = 0.0;        ///< fitted exponent of g(s) = beta (s - barrier)^mu
    double mu_se = 0.0;         ///< from the profile log-likelihood curvature
    double beta_free = 0.0;     ///< scale under the free-mu alternative
    double alpha_free = 0.0;    ///< drift under the free-mu alternative
    double lr_statistic = 0.0;  ///< 2 (logL_alt - logL_null), floored at 0
    double p_value = 1.0;       ///< chi-square with 1 dof (Wilks)
    double logl_null = 0.0;
    double logl_alt = 0.0;

    std::string to_json() const;
};

struct LRTestOptions {
    double mu_lo = 0.0;  ///< search bracket for the exponent
    double mu_hi = 3.0;
    double tol = 1e-6;
    double gap_floor = 1e-8;  ///< samples at the barrier are clamped to this gap
};

/// Gaussian increment likelihood ds_i ~ N(alpha tau, beta^2 (s_i - barrier)^{2 mu} tau);
/// the null fixes mu = 1/2, the alternative profiles alpha and beta in closed
/// form and maximizes over mu by grid bracketing plus Brent refinement.
/// Requires >= 100 increments; throws NumericalError when the likelihood is
/// degenerate (all increments equal).
LRTestReport lr_test(const TimeSeries& series, double barrier, const LRTestOptions& opts = {});

/// Survival function of chi-square with 1 dof; the Wilks p-value.
double chi2_1dof_pvalue(double statistic);

/// Profile log-likelihood at a fixed exponent (alpha and beta maximized in
/// closed form). lr_test maximizes this over mu; exposed so its optimality
/// can be checked directly.
double profile_loglik(const TimeSeries& series, double barrier, double mu,
                      const LRTestOptions& opts = {});

}  // namespace tzone
