#include "tzone/timestamp.hpp"

#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>

#include "tzone/errors.hpp"

namespace tzone {

namespace {

// Days from 1970-01-01 to y-m-d, proleptic Gregorian (Howard Hinnant's
// civil-days algorithm).
std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, std::int64_t& y, unsigned& m, unsigned& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t yy = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = doy - (153 * mp + 2) / 5 + 1;
    m = mp + (mp < 10 ? 3 : -9);
    y = yy + (m <= 2);
}

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

double parse_timestamp(const std::string& field) {
    if (all_digits(field)) {
        // epoch milliseconds
        return std::stod(field) / 1000.0;
    }
    int y = 0, mo = 0, d = 0, h = 0, mi = 0;
    double sec = 0.0;
    int consumed = 0;
    const char* c = field.c_str();
    if (std::sscanf(c, "%4d-%2d-%2d%n", &y, &mo, &d, &consumed) == 3) {
        const char* rest = c + consumed;
        if (*rest == 'T' || *rest == ' ') {
            int used = 0;
            if (std::sscanf(rest + 1, "%2d:%2d:%lf%n", &h, &mi, &sec, &used) != 3 &&
                std::sscanf(rest + 1, "%2d:%2d%n", &h, &mi, &used) != 2)
                throw DataError("unparseable timestamp: " + field);
            rest += 1 + used;
        }
        if (*rest != '\0' && std::string(rest) != "Z")
            throw DataError("unparseable timestamp suffix: " + field);
        if (mo < 1 || mo > 12 || d < 1 || d > 31 || h > 23 || mi > 59 || sec >= 61.0)
            throw DataError("timestamp out of range: " + field);
        return static_cast<double>(days_from_civil(y, static_cast<unsigned>(mo),
                                                   static_cast<unsigned>(d))) * 86400.0 +
               h * 3600.0 + mi * 60.0 + sec;
    }
    throw DataError("unparseable timestamp: " + field);
}

std::string format_iso8601(double epoch_seconds) {
    const double ms_total = std::round(epoch_seconds * 1000.0);
    std::int64_t ms = static_cast<std::int64_t>(ms_total);
    std::int64_t sec = ms >= 0 ? ms / 1000 : (ms - 999) / 1000;
    ms -= sec * 1000;
    std::int64_t days = sec >= 0 ? sec / 86400 : (sec - 86399) / 86400;
    const std::int64_t sod = sec - days * 86400;
    std::int64_t y;
    unsigned mo, d;
    civil_from_days(days, y, mo, d);
    char buf[96];
    std::snprintf(buf, sizeof buf, "%04lld-%02u-%02uT%02lld:%02lld:%02lld.%03lldZ",
                  static_cast<long long>(y), mo, d, static_cast<long long>(sod / 3600),
                  static_cast<long long>((sod % 3600) / 60), static_cast<long long>(sod % 60),
                  static_cast<long long>(ms));
    return buf;
}

}  // namespace tzone
