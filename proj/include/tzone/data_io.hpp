#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tzone/time_series.hpp"

namespace tzone {

struct TickRecord {
    double t_epoch_s;   ///< UTC, sub-second precision
    double price;       ///< level (not log); mid when bid/ask are present
    std::optional<std::pair<double, double>> bid_ask;
};

struct TickLoadResult {
    std::vector<TickRecord> ticks;  ///< sorted by timestamp
    std::int64_t n_malformed = 0;
    std::vector<std::string> bad_samples;  ///< up to 5 offending lines
};

/// Load a tick CSV. Two layouts, detected from the header:
///   timestamp,price
///   timestamp,bid,ask
/// Timestamps are ISO-8601 or epoch-milliseconds. Malformed rows are counted
/// and skipped; more than 1% of them (or an unknown header) raises DataError.
TickLoadResult load_ticks(const std::string& path);

struct CoarseGrainResult {
    TimeSeries series;
    /// carried[k] marks slot k as empty (value copied from the previous slot).
    std::vector<std::uint8_t> carried;
};

/// Median coarse-graining: the time axis is cut into consecutive
/// `window` second slots starting at the slot containing the first tick; each
/// nonempty slot becomes the lower median of its tick prices, log-transformed;
/// empty slots carry the previous value forward. Throws DataError on empty
/// input.
CoarseGrainResult coarse_grain(const std::vector<TickRecord>& ticks, double window_s = 10.0);

/// Increment validity mask for estimation: increments that land in a
/// carried-forward run longer than max_gap_slots are excluded, so data gaps
/// (weekends) do not contribute manufactured zero increments.
std::vector<std::uint8_t> gap_mask(const CoarseGrainResult& cg, int max_gap_slots = 5);

/// One 0/1 row per increment under a `valid` header; the wire format that
/// carries a gap mask from ingestion to estimation.
void write_mask_csv(const std::vector<std::uint8_t>& mask, const std::string& path);
std::vector<std::uint8_t> read_mask_csv(const std::string& path);

}  // namespace tzone
