// ISO-8601 timestamp handling on UTC epoch seconds. Offsets are applied
// during parsing so everything downstream works in UTC.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace qmine::timeutil {

// Accepts YYYY-MM-DD[THH:MM[:SS[.frac]]][Z|+HH:MM|-HH:MM|+HHMM].
// Fractional seconds are truncated. Missing offset means UTC.
std::optional<int64_t> parse_iso8601(std::string_view s);

std::string format_iso8601(int64_t epoch_seconds);  // YYYY-MM-DDTHH:MM:SSZ
std::string format_date(int64_t epoch_seconds);     // YYYY-MM-DD
std::string format_month(int64_t epoch_seconds);    // YYYY-MM

int64_t days_from_civil(int year, int month, int day);
void civil_from_days(int64_t days, int& year, int& month, int& day);

}  // namespace qmine::timeutil
