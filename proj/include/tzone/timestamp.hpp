#pragma once

#include <string>

namespace tzone {

/// Parse a timestamp field into seconds since the Unix epoch (UTC).
/// Accepts ISO-8601 ("2011-09-06T14:30:05.250Z", date-only, space separator)
/// and integer epoch-milliseconds; the format is detected from the value.
/// Throws DataError on anything else.
double parse_timestamp(const std::string& field);

/// Format epoch seconds as ISO-8601 UTC with millisecond precision.
std::string format_iso8601(double epoch_seconds);

}  // namespace tzone
