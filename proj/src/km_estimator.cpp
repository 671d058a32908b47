#include "tzone/km_estimator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "tzone/errors.hpp"
#include "tzone/model_fit.hpp"

namespace tzone {

void BinConfig::validate() const {
    if (n_bins < 2) throw std::invalid_argument("n_bins must be >= 2");
    if (min_count < 2) throw std::invalid_argument("min_count must be >= 2");
    if (range && !(range->first < range->second))
        throw std::invalid_argument("range must satisfy s_min < s_max");
}

KMAccumulator::KMAccumulator(const BinConfig& cfg, double tau_hours) : cfg_(cfg), tau_(tau_hours) {
    if (!cfg.range) throw std::invalid_argument("KMAccumulator needs an explicit range");
    if (cfg.n_bins < 2) throw std::invalid_argument("n_bins must be >= 2");
    if (cfg.min_count < 2) throw std::invalid_argument("min_count must be >= 2");
    if (!(tau_hours > 0.0)) throw std::invalid_argument("tau must be > 0");
    lo_ = cfg.range->first;
    hi_ = cfg.range->second;
    if (lo_ > hi_) throw std::invalid_argument("range must satisfy s_min <= s_max");
    // A degenerate range (constant series) collapses to a single bin.
    const int k = lo_ < hi_ ? cfg.n_bins : 1;
    width_ = lo_ < hi_ ? (hi_ - lo_) / k : 0.0;
    counts_.assign(static_cast<std::size_t>(k), 0);
    sum_d_.assign(static_cast<std::size_t>(k), 0.0);
    sum_d2_.assign(static_cast<std::size_t>(k), 0.0);
}

void KMAccumulator::add(const TimeSeries& series) {
    add(series, {});
}

void KMAccumulator::add(const TimeSeries& series, const std::vector<std::uint8_t>& mask) {
    series.validate();
    const Eigen::Index n = series.size();
    if (n < 2) throw std::invalid_argument("series needs at least 2 samples");
    if (!mask.empty() && mask.size() != static_cast<std::size_t>(n - 1))
        throw std::invalid_argument("mask must have one entry per increment");
    if (std::abs(series.tau_hours - tau_) > 1e-12 * std::max(1.0, tau_))
        throw std::invalid_argument("series tau differs from the accumulator tau");

    const auto k = static_cast<std::int64_t>(counts_.size());
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
        if (!mask.empty() && !mask[static_cast<std::size_t>(i)]) continue;
        const double s = series.values[i];
        // compare against the exact configured edges; reconstructing the top
        // edge from the width can lose the range maximum to rounding
        if (s < lo_ || s > hi_) continue;
        // Half-open bins; the range maximum folds into the last bin.
        std::int64_t idx = width_ > 0.0 ? static_cast<std::int64_t>((s - lo_) / width_) : 0;
        idx = std::clamp<std::int64_t>(idx, 0, k - 1);
        const double d = series.values[i + 1] - s;
        counts_[static_cast<std::size_t>(idx)] += 1;
        sum_d_[static_cast<std::size_t>(idx)] += d;
        sum_d2_[static_cast<std::size_t>(idx)] += d * d;
    }
}

KMEstimate KMAccumulator::finalize() const {
    KMEstimate est;
    est.tau_hours = tau_;
    for (std::size_t b = 0; b < counts_.size(); ++b) {
        est.n_increments += counts_[b];
        if (counts_[b] < cfg_.min_count) continue;
        const double n_b = static_cast<double>(counts_[b]);
        KMBin bin;
        bin.s_mid = lo_ + width_ * (static_cast<double>(b) + 0.5);
        bin.count = counts_[b];
        bin.f_hat = sum_d_[b] / (tau_ * n_b);
        bin.g_hat = std::sqrt(sum_d2_[b] / (tau_ * n_b));
        est.bins.push_back(bin);
    }
    if (est.bins.empty())
        throw std::invalid_argument("no bin reached min_count; series too short or too sparse");
    return est;
}

KMEstimate estimate(const TimeSeries& series, const BinConfig& cfg) {
    return estimate(series, cfg, {});
}

KMEstimate estimate(const TimeSeries& series, const BinConfig& cfg,
                    const std::vector<std::uint8_t>& mask) {
    cfg.validate();
    series.validate();
    if (series.size() < 2) throw std::invalid_argument("series needs at least 2 samples");
    BinConfig full = cfg;
    if (!full.range) full.range = {series.values.minCoeff(), series.values.maxCoeff()};
    KMAccumulator acc(full, series.tau_hours);
    acc.add(series, mask);
    return acc.finalize();
}

KMEstimate estimate(std::span<const TimeSeries> ensemble, const BinConfig& cfg) {
    cfg.validate();
    if (ensemble.empty()) throw std::invalid_argument("empty ensemble");
    BinConfig full = cfg;
    if (!full.range) {
        double lo = ensemble.front().values.minCoeff();
        double hi = ensemble.front().values.maxCoeff();
        for (const auto& series : ensemble) {
            lo = std::min(lo, series.values.minCoeff());
            hi = std::max(hi, series.values.maxCoeff());
        }
        full.range = {lo, hi};
    }
    KMAccumulator acc(full, ensemble.front().tau_hours);
    for (const auto& series : ensemble) acc.add(series);
    return acc.finalize();
}

TimeSeries subsample(const TimeSeries& series, int factor) {
    if (factor < 1) throw std::invalid_argument("subsample factor must be >= 1");
    if (factor == 1) return series;
    const Eigen::Index n = (series.size() + factor - 1) / factor;
    TimeSeries out;
    out.t0_hours = series.t0_hours;
    out.tau_hours = series.tau_hours * factor;
    out.values.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) out.values[i] = series.values[i * factor];
    return out;
}

RobustnessScan robustness_scan(const TimeSeries& series, double barrier,
                               const std::vector<int>& bin_counts,
                               const std::vector<int>& subsample_factors,
                               const BinConfig& base) {
    if (bin_counts.empty() || subsample_factors.empty())
        throw std::invalid_argument("robustness scan needs at least one K and one factor");
    RobustnessScan scan;
    for (int m : subsample_factors) {
        const TimeSeries sub = subsample(series, m);
        for (int k : bin_counts) {
            BinConfig cfg = base;
            cfg.n_bins = k;
            const KMEstimate est = estimate(sub, cfg);
            scan.rows.push_back({k, m, fit_volatility(est, barrier).first});
        }
    }
    double lo = scan.rows.front().beta_hat, hi = lo, sum = 0.0;
    for (const auto& row : scan.rows) {
        lo = std::min(lo, row.beta_hat);
        hi = std::max(hi, row.beta_hat);
        sum += row.beta_hat;
    }
    scan.max_relative_spread = (hi - lo) / (sum / static_cast<double>(scan.rows.size()));
    return scan;
}

void write_estimate_csv(const KMEstimate& est, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot open for writing: " + path);
    out << "s_mid,f_hat,g_hat,count\n";
    char buf[128];
    for (const auto& bin : est.bins) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%lld\n", bin.s_mid, bin.f_hat, bin.g_hat,
                      static_cast<long long>(bin.count));
        out << buf;
    }
    if (!out) throw DataError("write failed: " + path);
}

KMEstimate read_estimate_csv(const std::string& path, double tau_hours) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open: " + path);
    std::string line;
    if (!std::getline(in, line)) throw DataError("empty estimate file: " + path);
    if (line.ends_with('\r')) line.pop_back();
    if (line != "s_mid,f_hat,g_hat,count")
        throw DataError("expected header `s_mid,f_hat,g_hat,count` in " + path);
    KMEstimate est;
    est.tau_hours = tau_hours;
    while (std::getline(in, line)) {
        if (line.ends_with('\r')) line.pop_back();
        if (line.empty()) continue;
        KMBin bin;
        long long count = 0;
        if (std::sscanf(line.c_str(), "%lg,%lg,%lg,%lld", &bin.s_mid, &bin.f_hat, &bin.g_hat,
                        &count) != 4)
            throw DataError("malformed estimate row: " + line);
        bin.count = count;
        if (!est.bins.empty() && bin.s_mid <= est.bins.back().s_mid)
            throw DataError("bin midpoints must be strictly increasing in " + path);
        est.n_increments += count;
        est.bins.push_back(bin);
    }
    if (est.bins.empty()) throw DataError("estimate file has no bins: " + path);
    return est;
}

}  // namespace tzone
