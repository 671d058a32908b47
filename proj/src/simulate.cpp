#include "tzone/simulate.hpp"

#include <cmath>
#include <stdexcept>

#include "parallel.hpp"
#include "tzone/errors.hpp"
#include "tzone/rng.hpp"

namespace tzone {

void SimConfig::validate(const ProcessSpec& spec) const {
    if (n_steps < 1) throw std::invalid_argument("n_steps must be >= 1");
    if (n_paths < 1) throw std::invalid_argument("n_paths must be >= 1");
    if (tau_hours <= 0.0) throw std::invalid_argument("tau_hours must be > 0");
    if (!std::isfinite(initial_s)) throw std::invalid_argument("initial_s must be finite");
    if (spec.has_barrier() && initial_s < spec.barrier)
        throw std::invalid_argument("initial_s must be at or above the barrier");
}

Eigen::ArrayXd simulate_values(const ProcessSpec& spec, std::int64_t n_steps, double tau_hours,
                               double initial_s, BoundaryPolicy policy, std::uint64_t seed,
                               std::uint64_t stream) {
    const bool barred = spec.has_barrier();
    const double floor = spec.barrier;
    const double sqrt_tau = std::sqrt(tau_hours);

    NormalStream z(seed, stream);
    Eigen::ArrayXd out(n_steps + 1);
    double s = initial_s;
    out[0] = s;
    for (std::int64_t i = 0; i < n_steps; ++i) {
        // The volatility argument is clamped to the barrier so a square-root
        // profile never sees a negative gap mid-step.
        const double s_eval = barred ? std::max(s, floor) : s;
        s += drift(spec, s_eval) * tau_hours + volatility(spec, s_eval) * sqrt_tau * z();
        if (barred && s < floor) {
            s = policy == BoundaryPolicy::Reflect ? 2.0 * floor - s : floor;
        }
        if (!std::isfinite(s)) throw IntegrationError(static_cast<std::size_t>(i), stream);
        out[i + 1] = s;
    }
    return out;
}

std::vector<TimeSeries> simulate(const ProcessSpec& spec, const SimConfig& cfg) {
    spec.validate();
    cfg.validate(spec);

    std::vector<TimeSeries> ensemble(static_cast<std::size_t>(cfg.n_paths));
    detail::parallel_indices(cfg.n_paths, cfg.threads, [&](std::int64_t p) {
        TimeSeries& series = ensemble[static_cast<std::size_t>(p)];
        series.t0_hours = 0.0;
        series.tau_hours = cfg.tau_hours;
        series.values = simulate_values(spec, cfg.n_steps, cfg.tau_hours, cfg.initial_s,
                                        cfg.boundary, cfg.seed, static_cast<std::uint64_t>(p));
    });
    return ensemble;
}

TimeSeries simulate_path(const ProcessSpec& spec, const SimConfig& cfg) {
    SimConfig one = cfg;
    one.n_paths = 1;
    return std::move(simulate(spec, one).front());
}

namespace {

struct MomentSums {
    std::int64_t n = 0;
    double s1 = 0.0, s2 = 0.0, s3 = 0.0;

    void merge(const MomentSums& o) {
        n += o.n;
        s1 += o.s1;
        s2 += o.s2;
        s3 += o.s3;
    }
};

double loglog_slope(const Eigen::ArrayXd& x, const Eigen::ArrayXd& y) {
    const Eigen::ArrayXd lx = x.log();
    const Eigen::ArrayXd ly = y.log();
    const Eigen::ArrayXd dx = lx - lx.mean();
    return (dx * (ly - ly.mean())).sum() / dx.square().sum();
}

}  // namespace

MomentScalingResult moment_scaling_experiment(double c, double f, double vol_g,
                                              const std::vector<double>& gaps,
                                              const SimConfig& cfg) {
    if (c <= 0.0 || f <= 0.0) throw std::invalid_argument("C and F must be > 0");
    if (vol_g < 0.0) throw std::invalid_argument("vol_g must be >= 0");
    std::vector<double> gap_list = gaps.empty() ? std::vector<double>{std::sqrt(c / f)} : gaps;
    for (double gap : gap_list)
        if (!(gap > 0.0)) throw std::invalid_argument("every gap must be > 0");

    MomentScalingResult result;
    result.per_gap.reserve(gap_list.size());

    for (double gap : gap_list) {
        const double f_gap = c / (gap * gap);       // keeps C and vol_g fixed across gaps
        const double kappa = 2.0 * f_gap / gap;     // linear relaxation rate at s_eq
        const double tau = 0.01 / kappa;            // resolves the fastest gap's dynamics
        const double s_eq = cfg.initial_s;
        const ProcessSpec spec = ProcessSpec::physical(c, f_gap, vol_g, s_eq - gap);

        const std::int64_t burn = cfg.n_steps / 5;
        std::vector<MomentSums> partial(static_cast<std::size_t>(cfg.n_paths));
        detail::parallel_indices(cfg.n_paths, cfg.threads, [&](std::int64_t p) {
            NormalStream z(cfg.seed, static_cast<std::uint64_t>(p));
            const double sqrt_tau = std::sqrt(tau);
            MomentSums& acc = partial[static_cast<std::size_t>(p)];
            double s = s_eq;
            for (std::int64_t i = 0; i < cfg.n_steps; ++i) {
                const double s_eval = std::max(s, spec.barrier);
                s += drift(spec, s_eval) * tau + volatility(spec, s_eval) * sqrt_tau * z();
                if (s < spec.barrier) {
                    s = cfg.boundary == BoundaryPolicy::Reflect ? 2.0 * spec.barrier - s
                                                                : spec.barrier;
                }
                const double x = s - s_eq;
                if (!std::isfinite(s) || x > 3.0 * gap)
                    throw NumericalError("path diverged in moment scaling experiment (gap " +
                                         std::to_string(gap) + ")");
                if (i >= burn) {
                    acc.n += 1;
                    acc.s1 += x;
                    acc.s2 += x * x;
                    acc.s3 += x * x * x;
                }
            }
        });

        MomentSums total;
        for (const auto& ps : partial) total.merge(ps);
        const double n = static_cast<double>(total.n);
        const double mean = total.s1 / n;
        const double var = total.s2 / n - mean * mean;
        const double m3 = total.s3 / n - 3.0 * mean * (total.s2 / n) + 2.0 * mean * mean * mean;
        result.per_gap.push_back({gap, std::sqrt(std::max(var, 0.0)),
                                  var > 0.0 ? m3 / var : 0.0});
    }

    result.volatility_exponent = std::numeric_limits<double>::quiet_NaN();
    result.skewness_exponent = std::numeric_limits<double>::quiet_NaN();
    if (result.per_gap.size() >= 2) {
        const auto count = static_cast<Eigen::Index>(result.per_gap.size());
        Eigen::ArrayXd gx(count), sd(count), asym(count);
        bool positive = true;
        for (Eigen::Index i = 0; i < count; ++i) {
            gx[i] = result.per_gap[static_cast<std::size_t>(i)].gap;
            sd[i] = result.per_gap[static_cast<std::size_t>(i)].stat_sd;
            asym[i] = result.per_gap[static_cast<std::size_t>(i)].asymmetry;
            positive = positive && sd[i] > 0.0 && asym[i] > 0.0;
        }
        if (positive) {
            result.volatility_exponent = loglog_slope(gx, sd);
            result.skewness_exponent = loglog_slope(gx, asym);
        }
    }
    return result;
}

}  // namespace tzone
