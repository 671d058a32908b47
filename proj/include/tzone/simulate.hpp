#pragma once

#include <cstdint>
#include <vector>

#include "tzone/process.hpp"
#include "tzone/time_series.hpp"

namespace tzone {

/// What happens when an Euler step lands below the barrier.
enum class BoundaryPolicy { Reflect, Clamp };

struct SimConfig {
    std::int64_t n_steps = 1;      ///< steps per path; a path has n_steps + 1 samples
    std::int64_t n_paths = 1;
    std::uint64_t seed = 0;
    double initial_s = 0.0;
    BoundaryPolicy boundary = BoundaryPolicy::Reflect;
    double tau_hours = 1.0 / 360.0;
    int threads = 1;               ///< path-level workers; results are thread-count invariant

    void validate(const ProcessSpec& spec) const;
};

/// Euler-Maruyama integration of `spec` under the Ito convention:
/// s_{i+1} = s_i + f(s_i) tau + g(s_i) sqrt(tau) Z_i, then the boundary policy.
/// Path p draws from its own stream (seed, p), so the ensemble is reproducible
/// and identical for any thread count. Throws IntegrationError if a step goes
/// non-finite.
std::vector<TimeSeries> simulate(const ProcessSpec& spec, const SimConfig& cfg);

/// Convenience for n_paths == 1.
TimeSeries simulate_path(const ProcessSpec& spec, const SimConfig& cfg);

/// One path as a bare sample array; `stream` picks the same per-path
/// substream that simulate() gives path p of an ensemble, so large ensembles
/// can be generated and consumed one path at a time.
Eigen::ArrayXd simulate_values(const ProcessSpec& spec, std::int64_t n_steps, double tau_hours,
                               double initial_s, BoundaryPolicy policy, std::uint64_t seed,
                               std::uint64_t stream = 0);

struct GapMoments {
    double gap;        ///< s_eq - barrier
    double stat_sd;    ///< stationary standard deviation of s
    double asymmetry;  ///< third central moment / variance, the gap^2 skewness measure
};

struct MomentScalingResult {
    std::vector<GapMoments> per_gap;
    double volatility_exponent;  ///< log-log slope of stat_sd vs gap
    double skewness_exponent;    ///< log-log slope of asymmetry vs gap
};

/// Stationary moments of the potential model across barrier gaps.
///
/// The repulsive constant C and the volatility are held fixed while the
/// pressure is set per gap (F = C/gap^2), which is the regime where the
/// stationary sd grows as gap^{3/2}. The passed F only defines the reference
/// gap sqrt(C/F) used when `gaps` is empty. The reported skewness measure is
/// the third central moment over the variance; in this model it grows as
/// gap^2 with the clean prefactor 3 g^2 / (4 C). The time step is chosen per
/// gap from the local relaxation rate, the first fifth of each path is
/// discarded as burn-in, and a path wandering past 3 gaps from equilibrium
/// raises NumericalError (the expanded drift diverges out there).
MomentScalingResult moment_scaling_experiment(double c, double f, double vol_g,
                                              const std::vector<double>& gaps,
                                              const SimConfig& cfg);

}  // namespace tzone
