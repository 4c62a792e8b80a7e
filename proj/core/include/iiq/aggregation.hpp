#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "iiq/types.hpp"

namespace iiq {

// Gini coefficient over non-negative values: sum_i sum_j |x_i - x_j| /
// (2 n^2 mean), computed via the equivalent sorted form. 0 when all values
// are equal (including all-zero); throws Error on an empty list.
double gini_coefficient(std::vector<double> values);

struct DepartmentSummary {
  std::string department;
  std::size_t user_count = 0;
  double mean_index = 0.0;
  double median_index = 0.0;
};

// Org-level view of a single period.
struct OrgSummary {
  std::int64_t period_index = 0;
  std::size_t user_count = 0;
  double mean_index = 0.0;
  double median_index = 0.0;
  double active_user_share = 0.0;  // users with inactive_streak <= grace
  double top_decile_share = 0.0;   // index share of the top ceil(n/10) users
  double gini = 0.0;
  double total_hours_saved = 0.0;  // weekly-cap re-checked
  double total_usd = 0.0;
  std::vector<DepartmentSummary> per_department;  // sorted by name
};

// Summarizes one period across users. `results` must all carry the same
// period_index, one row per user; `users` carries each user's current state
// (for the activity share) and department. `prior_week_hours` is the number
// of hours already credited to each user earlier in the same week, so each
// user's cumulative week credit stays under rho * work_hours_per_day * 5;
// leave it empty when summarizing periods in isolation. Empty `results`
// yield an explicitly-empty summary (user_count 0, all statistics 0).
OrgSummary summarize(std::span<const PeriodResult> results,
                     const std::map<std::string, UserRecord>& users,
                     const EngineConfig& config,
                     const std::map<std::string, double>& prior_week_hours = {});

struct WeeklyHours {
  std::string user_id;
  std::int64_t week_index = 0;
  double raw_hours = 0.0;     // sum of the per-period estimates
  double capped_hours = 0.0;  // min(raw, rho * work_hours_per_day * 5)
  double capped_usd = 0.0;
};

// Groups per-period hour estimates into weeks (7 days on the period grid)
// and applies the weekly ceiling per user. Sorted by (user_id, week_index).
std::vector<WeeklyHours> weekly_hours_saved(std::span<const PeriodResult> results,
                                            const EngineConfig& config);

// Week index of a period on the same grid (7 * 24 hours per week).
std::int64_t week_index_of(std::int64_t period_index, const EngineConfig& config);

}  // namespace iiq
