#include "tzone/time_series.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "tzone/errors.hpp"
#include "tzone/timestamp.hpp"

namespace tzone {

void TimeSeries::validate() const {
    if (!(tau_hours > 0.0)) throw std::invalid_argument("tau_hours must be > 0");
    if (!values.isFinite().all()) throw std::invalid_argument("series contains non-finite values");
}

void write_series_csv(const TimeSeries& series, const std::string& path, TimeFormat fmt) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot open for writing: " + path);
    out << "t,s\n";
    char buf[64];
    for (Eigen::Index i = 0; i < series.size(); ++i) {
        if (fmt == TimeFormat::FractionalHours) {
            std::snprintf(buf, sizeof buf, "%.17g", series.time_at(i));
            out << buf;
        } else {
            out << format_iso8601(series.time_at(i) * 3600.0);
        }
        std::snprintf(buf, sizeof buf, ",%.17g\n", series.values[i]);
        out << buf;
    }
    if (!out) throw DataError("write failed: " + path);
}

TimeSeries read_series_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open: " + path);
    std::string line;
    if (!std::getline(in, line)) throw DataError("empty series file: " + path);
    if (line.ends_with('\r')) line.pop_back();
    if (line != "t,s") throw DataError("expected header `t,s` in " + path);

    std::vector<double> times;
    std::vector<double> values;
    while (std::getline(in, line)) {
        if (line.ends_with('\r')) line.pop_back();
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw DataError("malformed series row: " + line);
        const std::string t_field = line.substr(0, comma);
        // A field that parses fully as a double is fractional hours;
        // anything else (ISO-8601) goes through the timestamp parser.
        double t_hours;
        try {
            std::size_t used = 0;
            t_hours = std::stod(t_field, &used);
            if (used != t_field.size()) t_hours = parse_timestamp(t_field) / 3600.0;
        } catch (const std::invalid_argument&) {
            t_hours = parse_timestamp(t_field) / 3600.0;
        }
        times.push_back(t_hours);
        try {
            std::size_t used = 0;
            const std::string v_field = line.substr(comma + 1);
            values.push_back(std::stod(v_field, &used));
            if (used != v_field.size()) throw DataError("malformed series row: " + line);
        } catch (const std::logic_error&) {
            throw DataError("malformed series row: " + line);
        }
    }
    if (times.size() < 2) throw DataError("series needs at least 2 samples: " + path);

    TimeSeries series;
    series.t0_hours = times.front();
    series.tau_hours = times[1] - times[0];
    if (!(series.tau_hours > 0.0)) throw DataError("non-increasing time axis in " + path);
    for (std::size_t i = 2; i < times.size(); ++i) {
        const double dt = times[i] - times[i - 1];
        if (std::abs(dt - series.tau_hours) > 1e-6 * std::max(1.0, series.tau_hours))
            throw DataError("non-uniform spacing in " + path + " near row " + std::to_string(i));
    }
    series.values = Eigen::Map<const Eigen::ArrayXd>(values.data(),
                                                     static_cast<Eigen::Index>(values.size()));
    series.validate();
    return series;
}

}  // namespace tzone
