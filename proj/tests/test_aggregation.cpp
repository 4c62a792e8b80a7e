#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "iiq/aggregation.hpp"
#include "iiq/error.hpp"
#include "test_util.hpp"

using namespace iiq;
using testutil::close;

namespace {

// All pairs |x_i - x_j| / (2 n^2 mean): the textbook form the sorted
// implementation must reproduce.
double gini_pairwise(const std::vector<double>& values) {
  const double n = static_cast<double>(values.size());
  double total = 0.0;
  for (double v : values) total += v;
  if (total == 0.0) return 0.0;
  double diff_sum = 0.0;
  for (double a : values) {
    for (double b : values) diff_sum += std::abs(a - b);
  }
  return diff_sum / (2.0 * n * n * (total / n));
}

PeriodResult make_result(std::string user, std::int64_t period, double index,
                         double est_hours = 0.0, double leverage = 1.0) {
  PeriodResult r;
  r.user_id = std::move(user);
  r.period_index = period;
  r.iiq_index = index;
  r.est_hours_saved = est_hours;
  r.est_usd = est_hours * 40.0 * leverage;
  r.leverage = leverage;
  return r;
}

UserRecord make_record(int inactive_streak, std::string department = {}) {
  UserRecord record;
  record.state.inactive_streak = inactive_streak;
  record.department = std::move(department);
  return record;
}

}  // namespace

TEST_CASE("gini coefficient") {
  CHECK(gini_coefficient({5.0, 5.0, 5.0}) == 0.0);
  CHECK(gini_coefficient({0.0, 0.0, 0.0}) == 0.0);
  CHECK(gini_coefficient({42.0}) == 0.0);
  CHECK(close(gini_coefficient({0.0, 100.0}), 0.5));

  // One user holding everything among ten.
  CHECK(close(gini_coefficient({100, 0, 0, 0, 0, 0, 0, 0, 0, 0}), 0.9));

  CHECK_THROWS_WITH_AS(gini_coefficient({}), "gini of an empty list", Error);
  CHECK_THROWS_AS(gini_coefficient({1.0, -0.5}), Error);
  CHECK_THROWS_AS(gini_coefficient({1.0, std::nan("")}), Error);

  SUBCASE("matches the pairwise definition on random vectors") {
    Rng rng(99);
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<double> values;
      const int n = static_cast<int>(rng.next_int(1, 12));
      for (int i = 0; i < n; ++i) {
        values.push_back(rng.next_unit() < 0.2 ? 0.0 : rng.next_real(0.0, 500.0));
      }
      CHECK(close(gini_coefficient(values), gini_pairwise(values), 1e-12));
    }
  }

  SUBCASE("scale invariant") {
    const std::vector<double> base = {3.0, 1.0, 4.0, 1.0, 5.0, 9.0, 2.0, 6.0};
    std::vector<double> scaled = base;
    for (double& v : scaled) v *= 137.0;
    CHECK(close(gini_coefficient(base), gini_coefficient(scaled), 1e-12));
  }
}

TEST_CASE("summarize a single period") {
  const EngineConfig config;

  SUBCASE("empty input") {
    const OrgSummary s = summarize({}, {}, config);
    CHECK(s.user_count == 0);
    CHECK(s.mean_index == 0.0);
    CHECK(s.median_index == 0.0);
    CHECK(s.active_user_share == 0.0);
    CHECK(s.top_decile_share == 0.0);
    CHECK(s.gini == 0.0);
    CHECK(s.per_department.empty());
  }

  SUBCASE("single user") {
    const std::vector<PeriodResult> rows = {make_result("u1", 100, 500.0)};
    const std::map<std::string, UserRecord> users = {{"u1", make_record(0)}};
    const OrgSummary s = summarize(rows, users, config);
    CHECK(s.period_index == 100);
    CHECK(s.user_count == 1);
    CHECK(s.mean_index == 500.0);
    CHECK(s.median_index == 500.0);
    CHECK(s.active_user_share == 1.0);
    CHECK(s.top_decile_share == 1.0);
    CHECK(s.gini == 0.0);
  }

  SUBCASE("uniform users") {
    std::vector<PeriodResult> rows;
    std::map<std::string, UserRecord> users;
    for (int i = 0; i < 10; ++i) {
      const std::string id = "u" + std::to_string(i);
      rows.push_back(make_result(id, 7, 100.0));
      users[id] = make_record(0);
    }
    const OrgSummary s = summarize(rows, users, config);
    CHECK(s.mean_index == 100.0);
    CHECK(s.median_index == 100.0);
    CHECK(s.gini == 0.0);
    CHECK(s.active_user_share == 1.0);
    CHECK(close(s.top_decile_share, 0.1));  // top 1 of 10 equal users
  }

  SUBCASE("one power user masks nine idle ones") {
    std::vector<PeriodResult> rows = {make_result("star", 7, 100.0)};
    std::map<std::string, UserRecord> users = {{"star", make_record(0)}};
    for (int i = 0; i < 9; ++i) {
      const std::string id = "idle" + std::to_string(i);
      rows.push_back(make_result(id, 7, 0.0));
      users[id] = make_record(10);  // long past the grace window
    }
    const OrgSummary s = summarize(rows, users, config);
    CHECK(close(s.mean_index, 10.0));
    CHECK(s.median_index == 0.0);
    CHECK(s.mean_index > 10.0 * s.median_index);  // the mean alone overstates adoption
    CHECK(close(s.active_user_share, 0.1));
    CHECK(close(s.top_decile_share, 1.0));
    CHECK(close(s.gini, 0.9));
    const auto max_row = std::max_element(
        rows.begin(), rows.end(),
        [](const auto& a, const auto& b) { return a.iiq_index < b.iiq_index; });
    CHECK(s.median_index <= max_row->iiq_index);
  }

  SUBCASE("activity share uses the grace threshold") {
    std::vector<PeriodResult> rows = {make_result("a", 7, 10.0), make_result("b", 7, 10.0)};
    std::map<std::string, UserRecord> users = {
        {"a", make_record(config.grace_periods)},       // exactly at grace: active
        {"b", make_record(config.grace_periods + 1)}};  // just past: inactive
    const OrgSummary s = summarize(rows, users, config);
    CHECK(s.active_user_share == 0.5);
  }

  SUBCASE("per-department rollup") {
    const std::vector<PeriodResult> rows = {
        make_result("a", 7, 100.0), make_result("b", 7, 300.0), make_result("c", 7, 50.0),
        make_result("d", 7, 80.0)};
    const std::map<std::string, UserRecord> users = {{"a", make_record(0, "eng")},
                                                     {"b", make_record(0, "eng")},
                                                     {"c", make_record(0, "ops")},
                                                     {"d", make_record(0)}};
    const OrgSummary s = summarize(rows, users, config);
    REQUIRE(s.per_department.size() == 3);
    CHECK(s.per_department[0].department == "eng");
    CHECK(s.per_department[0].user_count == 2);
    CHECK(s.per_department[0].mean_index == 200.0);
    CHECK(s.per_department[0].median_index == 200.0);
    CHECK(s.per_department[1].department == "ops");
    CHECK(s.per_department[1].user_count == 1);
    CHECK(s.per_department[1].median_index == 50.0);
    CHECK(s.per_department[2].department == "unassigned");
    CHECK(s.per_department[2].user_count == 1);
  }

  SUBCASE("hours and usd respect the weekly ceiling") {
    const std::vector<PeriodResult> rows = {make_result("u1", 7, 10.0, 6.0, 2.5)};
    const std::map<std::string, UserRecord> users = {{"u1", make_record(0)}};

    const OrgSummary fresh = summarize(rows, users, config);
    CHECK(close(fresh.total_hours_saved, 6.0));
    CHECK(close(fresh.total_usd, 600.0));  // 6h * 40 * 2.5

    // 27 of the 30 weekly hours already credited: only 3 fit.
    const OrgSummary capped = summarize(rows, users, config, {{"u1", 27.0}});
    CHECK(close(capped.total_hours_saved, 3.0));
    CHECK(close(capped.total_usd, 300.0));

    // Fully exhausted week credits nothing.
    const OrgSummary spent = summarize(rows, users, config, {{"u1", 30.0}});
    CHECK(spent.total_hours_saved == 0.0);
    CHECK(spent.total_usd == 0.0);
  }

  SUBCASE("input validation") {
    const std::map<std::string, UserRecord> users = {{"a", make_record(0)},
                                                     {"b", make_record(0)}};
    const std::vector<PeriodResult> mixed = {make_result("a", 7, 1.0), make_result("b", 8, 1.0)};
    CHECK_THROWS_WITH_AS(summarize(mixed, users, config),
                         doctest::Contains("single period"), Error);

    const std::vector<PeriodResult> dup = {make_result("a", 7, 1.0), make_result("a", 7, 1.0)};
    CHECK_THROWS_WITH_AS(summarize(dup, users, config), doctest::Contains("duplicate user"),
                         Error);

    const std::vector<PeriodResult> stray = {make_result("zz", 7, 1.0)};
    CHECK_THROWS_WITH_AS(summarize(stray, users, config),
                         doctest::Contains("state missing for user zz"), Error);
  }
}

TEST_CASE("top decile ties break deterministically") {
  const EngineConfig config;
  std::vector<PeriodResult> rows;
  std::map<std::string, UserRecord> users;
  for (int i = 0; i < 20; ++i) {
    const std::string id = "u" + std::string(1, static_cast<char>('a' + i));
    rows.push_back(make_result(id, 7, i < 2 ? 100.0 : 10.0));
    users[id] = make_record(0);
  }
  // ceil(20/10) = 2 top slots, both filled by the 100s regardless of input order.
  std::reverse(rows.begin(), rows.end());
  const OrgSummary s = summarize(rows, users, config);
  CHECK(close(s.top_decile_share, 200.0 / 380.0));
}

TEST_CASE("weekly hour grouping") {
  const EngineConfig config;
  const std::int64_t week_start = 7 * 2923;  // aligned daily period

  SUBCASE("seven capped days collapse to the weekly ceiling") {
    std::vector<PeriodResult> rows;
    for (int d = 0; d < 7; ++d) {
      rows.push_back(make_result("u1", week_start + d, 10.0, 6.0, 1.0));
    }
    const auto weeks = weekly_hours_saved(rows, config);
    REQUIRE(weeks.size() == 1);
    CHECK(weeks[0].user_id == "u1");
    CHECK(weeks[0].week_index == 2923);
    CHECK(close(weeks[0].raw_hours, 42.0));
    CHECK(close(weeks[0].capped_hours, 30.0));  // rho * 8h * 5d
    CHECK(close(weeks[0].capped_usd, 1200.0));  // 30 * 40 * V(1)
  }

  SUBCASE("weeks split on the grid and users stay separate") {
    std::vector<PeriodResult> rows = {
        make_result("u1", week_start + 6, 10.0, 2.0, 1.0),
        make_result("u1", week_start + 7, 10.0, 3.0, 1.0),  // next week
        make_result("u2", week_start + 6, 10.0, 1.0, 2.5),
    };
    const auto weeks = weekly_hours_saved(rows, config);
    REQUIRE(weeks.size() == 3);
    CHECK(weeks[0].user_id == "u1");
    CHECK(weeks[0].week_index == 2923);
    CHECK(weeks[0].raw_hours == 2.0);
    CHECK(weeks[0].capped_hours == 2.0);  // under the cap: untouched
    CHECK(weeks[1].user_id == "u1");
    CHECK(weeks[1].week_index == 2924);
    CHECK(weeks[1].raw_hours == 3.0);
    CHECK(weeks[2].user_id == "u2");
    CHECK(close(weeks[2].capped_usd, 1.0 * 40.0 * 2.5));
  }

  SUBCASE("usd uses the latest leverage in the bucket") {
    // A mid-week level change values the whole week at the newest multiplier.
    std::vector<PeriodResult> rows = {
        make_result("u1", week_start, 10.0, 1.0, 1.0),
        make_result("u1", week_start + 1, 10.0, 1.0, 4.0),
    };
    const auto weeks = weekly_hours_saved(rows, config);
    REQUIRE(weeks.size() == 1);
    CHECK(close(weeks[0].capped_usd, 2.0 * 40.0 * 4.0));
  }

  SUBCASE("sub-daily grids group 7 * 24 hours of periods") {
    EngineConfig sub;
    sub.period_hours = 6.0;
    CHECK(week_index_of(0, sub) == 0);
    CHECK(week_index_of(27, sub) == 0);
    CHECK(week_index_of(28, sub) == 1);
    CHECK(week_index_of(-1, sub) == -1);
  }
}

TEST_CASE("week index of daily periods") {
  const EngineConfig config;
  CHECK(week_index_of(0, config) == 0);
  CHECK(week_index_of(6, config) == 0);
  CHECK(week_index_of(7, config) == 1);
  CHECK(week_index_of(-1, config) == -1);
  CHECK(week_index_of(-7, config) == -1);
  CHECK(week_index_of(-8, config) == -2);
}
