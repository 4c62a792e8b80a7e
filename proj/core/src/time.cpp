#include "iiq/time.hpp"

#include <charconv>
#include <cmath>

#include "iiq/error.hpp"

namespace iiq {

namespace {

// Month lengths for a non-leap year.
constexpr unsigned kMonthDays[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};

bool is_leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

unsigned days_in_month(int y, unsigned m) {
  if (m == 2 && is_leap(y)) return 29;
  return kMonthDays[m - 1];
}

int parse_fixed_uint(std::string_view s, std::size_t pos, std::size_t len) {
  int value = 0;
  for (std::size_t i = pos; i < pos + len; ++i) {
    char c = s[i];
    if (c < '0' || c > '9') return -1;
    value = value * 10 + (c - '0');
  }
  return value;
}

}  // namespace

std::int64_t days_from_civil(int y, unsigned m, unsigned d) {
  // Howard Hinnant's algorithm, shifted era arithmetic.
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& year, unsigned& month, unsigned& day) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  day = doy - (153 * mp + 2) / 5 + 1;
  month = mp + (mp < 10 ? 3 : -9);
  year = static_cast<int>(y + (month <= 2));
}

std::int64_t parse_iso8601_utc(std::string_view text) {
  // YYYY-MM-DDTHH:MM:SSZ
  if (text.size() != 20 || text[4] != '-' || text[7] != '-' || text[10] != 'T' ||
      text[13] != ':' || text[16] != ':' || text[19] != 'Z') {
    throw ParseError("invalid timestamp '" + std::string(text) +
                     "': expected YYYY-MM-DDTHH:MM:SSZ");
  }
  int year = parse_fixed_uint(text, 0, 4);
  int month = parse_fixed_uint(text, 5, 2);
  int day = parse_fixed_uint(text, 8, 2);
  int hour = parse_fixed_uint(text, 11, 2);
  int minute = parse_fixed_uint(text, 14, 2);
  int second = parse_fixed_uint(text, 17, 2);
  if (year < 0 || month < 1 || month > 12 || day < 1 || hour < 0 || minute < 0 ||
      second < 0 || hour > 23 || minute > 59 || second > 59 ||
      static_cast<unsigned>(day) > days_in_month(year, static_cast<unsigned>(month))) {
    throw ParseError("invalid timestamp '" + std::string(text) + "'");
  }
  return days_from_civil(year, static_cast<unsigned>(month), static_cast<unsigned>(day)) * 86400 +
         hour * 3600 + minute * 60 + second;
}

std::string format_iso8601_utc(std::int64_t epoch_seconds) {
  std::int64_t days = epoch_seconds / 86400;
  std::int64_t rem = epoch_seconds % 86400;
  if (rem < 0) {
    rem += 86400;
    days -= 1;
  }
  int year;
  unsigned month, day;
  civil_from_days(days, year, month, day);
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02lld:%02lld:%02lldZ", year, month, day,
                static_cast<long long>(rem / 3600), static_cast<long long>((rem / 60) % 60),
                static_cast<long long>(rem % 60));
  return buf;
}

std::int64_t period_seconds(double period_hours) {
  return static_cast<std::int64_t>(std::llround(period_hours * 3600.0));
}

std::int64_t period_index_of(std::int64_t epoch_seconds, double period_hours) {
  const std::int64_t p = period_seconds(period_hours);
  std::int64_t q = epoch_seconds / p;
  if (epoch_seconds % p < 0) --q;
  return q;
}

std::int64_t period_start_seconds(std::int64_t period_index, double period_hours) {
  return period_index * period_seconds(period_hours);
}

}  // namespace iiq
