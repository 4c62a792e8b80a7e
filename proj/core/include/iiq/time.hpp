#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace iiq {

// Days since 1970-01-01 for a proleptic Gregorian date.
std::int64_t days_from_civil(int year, unsigned month, unsigned day);

// Inverse of days_from_civil.
void civil_from_days(std::int64_t days, int& year, unsigned& month, unsigned& day);

// Strict "YYYY-MM-DDTHH:MM:SSZ" (UTC, seconds precision). Throws ParseError.
std::int64_t parse_iso8601_utc(std::string_view text);

std::string format_iso8601_utc(std::int64_t epoch_seconds);

// Length of one scoring period in seconds.
std::int64_t period_seconds(double period_hours);

// Period index = floor(epoch_seconds / period_seconds). Floor, not
// truncation, so pre-1970 timestamps land in the right bucket.
std::int64_t period_index_of(std::int64_t epoch_seconds, double period_hours);

std::int64_t period_start_seconds(std::int64_t period_index, double period_hours);

}  // namespace iiq
