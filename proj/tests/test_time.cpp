#include <doctest.h>

#include "iiq/error.hpp"
#include "iiq/time.hpp"

using namespace iiq;

TEST_CASE("civil day conversion round trip") {
  CHECK(days_from_civil(1970, 1, 1) == 0);
  CHECK(days_from_civil(2026, 1, 5) == 20458);
  int y;
  unsigned m, d;
  civil_from_days(20458, y, m, d);
  CHECK(y == 2026);
  CHECK(m == 1);
  CHECK(d == 5);
  for (std::int64_t days : {-1000, 0, 59, 60, 365, 36524, 73048}) {
    civil_from_days(days, y, m, d);
    CHECK(days_from_civil(y, m, d) == days);
  }
}

TEST_CASE("iso8601 parse and format") {
  CHECK(parse_iso8601_utc("1970-01-01T00:00:00Z") == 0);
  CHECK(parse_iso8601_utc("2026-01-05T00:00:00Z") == 1767571200);
  CHECK(parse_iso8601_utc("2024-02-29T12:30:45Z") ==
        days_from_civil(2024, 2, 29) * 86400 + 12 * 3600 + 30 * 60 + 45);
  CHECK(format_iso8601_utc(1767571200) == "2026-01-05T00:00:00Z");
  for (std::int64_t ts : {std::int64_t{0}, std::int64_t{951827696}, std::int64_t{1767571200},
                          std::int64_t{-86400}}) {
    CHECK(parse_iso8601_utc(format_iso8601_utc(ts)) == ts);
  }
}

TEST_CASE("iso8601 rejects malformed input") {
  CHECK_THROWS_AS(parse_iso8601_utc("2026-01-05 00:00:00Z"), ParseError);
  CHECK_THROWS_AS(parse_iso8601_utc("2026-01-05T00:00:00"), ParseError);
  CHECK_THROWS_AS(parse_iso8601_utc("2026-13-05T00:00:00Z"), ParseError);
  CHECK_THROWS_AS(parse_iso8601_utc("2026-02-29T00:00:00Z"), ParseError);  // not a leap year
  CHECK_THROWS_AS(parse_iso8601_utc("2026-01-32T00:00:00Z"), ParseError);
  CHECK_THROWS_AS(parse_iso8601_utc("2026-01-05T24:00:00Z"), ParseError);
  CHECK_THROWS_AS(parse_iso8601_utc("2026-01-05T00:60:00Z"), ParseError);
  CHECK_THROWS_AS(parse_iso8601_utc(""), ParseError);
  CHECK_THROWS_AS(parse_iso8601_utc("garbage"), ParseError);
}

TEST_CASE("period grid") {
  CHECK(period_seconds(24.0) == 86400);
  CHECK(period_seconds(6.0) == 21600);
  CHECK(period_index_of(0, 24.0) == 0);
  CHECK(period_index_of(86399, 24.0) == 0);
  CHECK(period_index_of(86400, 24.0) == 1);
  CHECK(period_index_of(-1, 24.0) == -1);  // floor, not truncation
  CHECK(period_index_of(1767571200, 24.0) == 20458);
  CHECK(period_index_of(1767571200, 6.0) == 20458 * 4);
  CHECK(period_start_seconds(20458, 24.0) == 1767571200);
  CHECK(period_start_seconds(period_index_of(1767571200 + 3600, 6.0), 6.0) == 1767571200);
}
