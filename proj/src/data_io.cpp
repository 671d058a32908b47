#include "tzone/data_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "tzone/errors.hpp"
#include "tzone/timestamp.hpp"

namespace tzone {

namespace {

std::string lower_strip(std::string s) {
    std::string out;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c)))
            out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    return fields;
}

double parse_positive(const std::string& field) {
    std::size_t used = 0;
    const double v = std::stod(field, &used);
    if (used != field.size() || !(v > 0.0) || !std::isfinite(v))
        throw DataError("not a positive number: " + field);
    return v;
}

}  // namespace

TickLoadResult load_ticks(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open: " + path);
    std::string line;
    if (!std::getline(in, line)) throw DataError("empty tick file: " + path);
    if (line.ends_with('\r')) line.pop_back();

    const std::string header = lower_strip(line);
    bool with_spread;
    if (header == "timestamp,price") with_spread = false;
    else if (header == "timestamp,bid,ask") with_spread = true;
    else throw DataError("unknown tick header `" + line + "`; expected timestamp,price or timestamp,bid,ask");

    TickLoadResult result;
    std::int64_t n_rows = 0;
    while (std::getline(in, line)) {
        if (line.ends_with('\r')) line.pop_back();
        if (line.empty()) continue;
        ++n_rows;
        try {
            const auto fields = split_csv(line);
            if (fields.size() != (with_spread ? 3u : 2u)) throw DataError("wrong field count");
            TickRecord tick;
            tick.t_epoch_s = parse_timestamp(fields[0]);
            if (with_spread) {
                const double bid = parse_positive(fields[1]);
                const double ask = parse_positive(fields[2]);
                if (bid > ask) throw DataError("bid above ask");
                tick.bid_ask = {bid, ask};
                tick.price = 0.5 * (bid + ask);
            } else {
                tick.price = parse_positive(fields[1]);
            }
            result.ticks.push_back(tick);
        } catch (const std::exception&) {
            result.n_malformed += 1;
            if (result.bad_samples.size() < 5) result.bad_samples.push_back(line);
        }
    }
    if (result.ticks.empty()) throw DataError("no valid ticks in " + path);
    if (result.n_malformed * 100 > n_rows) {
        std::string msg = "more than 1% malformed rows in " + path + "; samples:";
        for (const auto& sample : result.bad_samples) msg += "\n  " + sample;
        throw DataError(msg);
    }
    std::stable_sort(result.ticks.begin(), result.ticks.end(),
                     [](const TickRecord& a, const TickRecord& b) { return a.t_epoch_s < b.t_epoch_s; });
    return result;
}

CoarseGrainResult coarse_grain(const std::vector<TickRecord>& ticks, double window_s) {
    if (ticks.empty()) throw DataError("coarse_grain needs at least one tick");
    if (!(window_s > 0.0)) throw std::invalid_argument("window must be > 0");

    // Slots are [k w, (k+1) w) anchored at the slot containing the first tick.
    const auto slot_of = [&](double t) {
        return static_cast<std::int64_t>(std::floor(t / window_s));
    };
    const std::int64_t slot0 = slot_of(ticks.front().t_epoch_s);
    const std::int64_t slot_last = slot_of(ticks.back().t_epoch_s);
    const auto n_slots = static_cast<std::size_t>(slot_last - slot0 + 1);

    std::vector<std::vector<double>> prices(n_slots);
    for (const auto& tick : ticks) {
        if (!(tick.price > 0.0)) throw DataError("non-positive tick price");
        prices[static_cast<std::size_t>(slot_of(tick.t_epoch_s) - slot0)].push_back(tick.price);
    }

    CoarseGrainResult result;
    result.series.t0_hours = static_cast<double>(slot0) * window_s / 3600.0;
    result.series.tau_hours = window_s / 3600.0;
    result.series.values.resize(static_cast<Eigen::Index>(n_slots));
    result.carried.assign(n_slots, 0);

    double last = 0.0;
    for (std::size_t k = 0; k < n_slots; ++k) {
        auto& slot = prices[k];
        if (slot.empty()) {
            result.carried[k] = 1;  // first slot is never empty by construction
        } else {
            // lower median: deterministic for even counts
            const auto mid = slot.begin() + (static_cast<std::ptrdiff_t>(slot.size()) - 1) / 2;
            std::nth_element(slot.begin(), mid, slot.end());
            last = std::log(*mid);
        }
        result.series.values[static_cast<Eigen::Index>(k)] = last;
    }
    return result;
}

void write_mask_csv(const std::vector<std::uint8_t>& mask, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot open for writing: " + path);
    out << "valid\n";
    for (auto bit : mask) out << (bit ? '1' : '0') << '\n';
    if (!out) throw DataError("write failed: " + path);
}

std::vector<std::uint8_t> read_mask_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open: " + path);
    std::string line;
    if (!std::getline(in, line)) throw DataError("empty mask file: " + path);
    if (line.ends_with('\r')) line.pop_back();
    if (line != "valid") throw DataError("expected header `valid` in " + path);
    std::vector<std::uint8_t> mask;
    while (std::getline(in, line)) {
        if (line.ends_with('\r')) line.pop_back();
        if (line.empty()) continue;
        if (line != "0" && line != "1") throw DataError("malformed mask row: " + line);
        mask.push_back(line == "1" ? 1 : 0);
    }
    return mask;
}

std::vector<std::uint8_t> gap_mask(const CoarseGrainResult& cg, int max_gap_slots) {
    if (max_gap_slots < 0) throw std::invalid_argument("max_gap_slots must be >= 0");
    const std::size_t n = cg.carried.size();
    if (n != static_cast<std::size_t>(cg.series.size()))
        throw std::invalid_argument("carried flags do not match the series");
    std::vector<std::uint8_t> mask(n >= 1 ? n - 1 : 0, 1);
    // A run of carried slots [a, b] longer than the threshold invalidates its
    // manufactured zero increments (a-1 .. b-1) and the jump increment b that
    // bridges to the next real sample.
    std::size_t k = 1;
    while (k < n) {
        if (!cg.carried[k]) {
            ++k;
            continue;
        }
        std::size_t run_end = k;
        while (run_end + 1 < n && cg.carried[run_end + 1]) ++run_end;
        if (run_end - k + 1 > static_cast<std::size_t>(max_gap_slots)) {
            for (std::size_t i = k - 1; i <= run_end && i < mask.size(); ++i) mask[i] = 0;
        }
        k = run_end + 1;
    }
    return mask;
}

}  // namespace tzone
