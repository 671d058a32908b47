#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tzone/time_series.hpp"

namespace tzone {

struct BinConfig {
    int n_bins = 100;
    /// Value range override. Without it the range is [min s_i, max s_i] of the
    /// series; with it, samples outside are skipped.
    std::optional<std::pair<double, double>> range;
    int min_count = 10;  ///< bins with fewer increments are dropped from the report

    void validate() const;
};

struct KMBin {
    double s_mid;
    double f_hat;  ///< 1/hour
    double g_hat;  ///< 1/sqrt(hour)
    std::int64_t count;
};

/// Binned conditional-moment estimates of drift and volatility.
struct KMEstimate {
    std::vector<KMBin> bins;          ///< midpoints strictly increasing
    double tau_hours = 0.0;
    std::int64_t n_increments = 0;    ///< total increments assigned, over all bins
};

/// Streaming bin accumulator, so large ensembles never need to be held in
/// memory at once. Requires an explicit range in the config.
class KMAccumulator {
public:
    KMAccumulator(const BinConfig& cfg, double tau_hours);

    void add(const TimeSeries& series);
    /// mask[i] == false drops the increment s_i -> s_{i+1} (gap exclusions).
    void add(const TimeSeries& series, const std::vector<std::uint8_t>& mask);

    KMEstimate finalize() const;

private:
    BinConfig cfg_;
    double tau_;
    double lo_, hi_, width_;
    std::vector<std::int64_t> counts_;
    std::vector<double> sum_d_;
    std::vector<double> sum_d2_;
};

/// Binned estimator for drift and volatility from one series:
///   f_hat(bin) = sum(ds) / (tau N_bin),  g_hat(bin) = sqrt(sum(ds^2) / (tau N_bin)).
///
/// Each sample except the last (it has no successor) lands in exactly one of
/// K equal-width bins over the value range, half-open with the global maximum
/// folded into the last bin. A constant series degenerates to a single bin
/// with zero moments. Throws std::invalid_argument for fewer than 2 samples
/// or when no bin reaches min_count.
KMEstimate estimate(const TimeSeries& series, const BinConfig& cfg);

/// As above with an increment validity mask (size N-1).
KMEstimate estimate(const TimeSeries& series, const BinConfig& cfg,
                    const std::vector<std::uint8_t>& mask);

/// Pooled estimate across an ensemble; bins span the global range unless the
/// config fixes one. Path-final samples contribute no increment.
KMEstimate estimate(std::span<const TimeSeries> ensemble, const BinConfig& cfg);

/// Take every m-th sample; tau becomes m*tau. m == 1 returns a copy.
TimeSeries subsample(const TimeSeries& series, int factor);

struct RobustnessRow {
    int n_bins;
    int subsample_factor;
    double beta_hat;
};

struct RobustnessScan {
    std::vector<RobustnessRow> rows;
    double max_relative_spread;  ///< (max beta - min beta) / mean beta
};

/// Fit beta over a grid of bin counts and subsample factors to probe how
/// sensitive the square-root volatility fit is to the estimation knobs.
RobustnessScan robustness_scan(const TimeSeries& series, double barrier,
                               const std::vector<int>& bin_counts,
                               const std::vector<int>& subsample_factors,
                               const BinConfig& base = {});

/// CSV with header `s_mid,f_hat,g_hat,count`.
void write_estimate_csv(const KMEstimate& est, const std::string& path);
KMEstimate read_estimate_csv(const std::string& path, double tau_hours);

}  // namespace tzone
