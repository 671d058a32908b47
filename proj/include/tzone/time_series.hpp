#pragma once

#include <Eigen/Core>
#include <string>

namespace tzone {

/// Uniformly spaced log-rate samples. Time is measured in hours throughout;
/// 10-second data has tau = 1/360.
struct TimeSeries {
    double t0_hours = 0.0;   ///< time of the first sample, hours since epoch (0 for simulations)
    double tau_hours = 1.0 / 360.0;
    Eigen::ArrayXd values;   ///< log-rate samples, uniform spacing

    Eigen::Index size() const { return values.size(); }
    double time_at(Eigen::Index i) const { return t0_hours + static_cast<double>(i) * tau_hours; }

    /// Throws std::invalid_argument if tau <= 0 or any value is non-finite.
    void validate() const;
};

enum class TimeFormat { FractionalHours, Iso8601 };

/// Write as CSV with header `t,s`. FractionalHours prints t with full double
/// precision and round-trips exactly; Iso8601 has millisecond resolution.
void write_series_csv(const TimeSeries& series, const std::string& path,
                      TimeFormat fmt = TimeFormat::FractionalHours);

/// Read a `t,s` CSV produced by write_series_csv (either time format).
/// tau is taken from the first two rows; spacing of the rest is checked.
TimeSeries read_series_csv(const std::string& path);

}  // namespace tzone
