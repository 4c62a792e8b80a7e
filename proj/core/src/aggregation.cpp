#include "iiq/aggregation.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "iiq/error.hpp"

namespace iiq {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t periods_per_week(const EngineConfig& config) {
  return std::llround(7.0 * 24.0 / config.period_hours);
}

double median_of_sorted(const std::vector<double>& sorted) {
  const std::size_t n = sorted.size();
  if (n == 0) return 0.0;
  return n % 2 == 1 ? sorted[n / 2] : (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0;
}

}  // namespace

double gini_coefficient(std::vector<double> values) {
  if (values.empty()) {
    throw Error("gini of an empty list");
  }
  for (double v : values) {
    if (v < 0.0 || !std::isfinite(v)) {
      throw Error("gini requires finite non-negative values");
    }
  }
  std::sort(values.begin(), values.end());
  double total = 0.0;
  double weighted = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    total += values[i];
    weighted += static_cast<double>(i + 1) * values[i];
  }
  if (total == 0.0) return 0.0;
  const double n = static_cast<double>(values.size());
  return 2.0 * weighted / (n * total) - (n + 1.0) / n;
}

std::int64_t week_index_of(std::int64_t period_index, const EngineConfig& config) {
  return floor_div(period_index, periods_per_week(config));
}

OrgSummary summarize(std::span<const PeriodResult> results,
                     const std::map<std::string, UserRecord>& users,
                     const EngineConfig& config,
                     const std::map<std::string, double>& prior_week_hours) {
  config.validate();
  OrgSummary summary;
  if (results.empty()) {
    return summary;
  }

  summary.period_index = results.front().period_index;
  std::set<std::string> seen;
  for (const PeriodResult& r : results) {
    if (r.period_index != summary.period_index) {
      throw Error("summarize requires rows from a single period");
    }
    if (!seen.insert(r.user_id).second) {
      throw Error("duplicate user in summary input: " + r.user_id);
    }
    if (!users.contains(r.user_id)) {
      throw Error("state missing for user " + r.user_id);
    }
  }

  const std::size_t n = results.size();
  summary.user_count = n;

  std::vector<double> indexes;
  indexes.reserve(n);
  double index_sum = 0.0;
  std::size_t active = 0;
  for (const PeriodResult& r : results) {
    indexes.push_back(r.iiq_index);
    index_sum += r.iiq_index;
    if (users.at(r.user_id).state.inactive_streak <= config.grace_periods) {
      ++active;
    }
  }
  summary.mean_index = index_sum / static_cast<double>(n);
  std::vector<double> sorted = indexes;
  std::sort(sorted.begin(), sorted.end());
  summary.median_index = median_of_sorted(sorted);
  summary.active_user_share = static_cast<double>(active) / static_cast<double>(n);
  summary.gini = gini_coefficient(indexes);

  // Top decile: ceil(n/10) users by index descending, ties by user_id.
  std::vector<const PeriodResult*> ranked;
  ranked.reserve(n);
  for (const PeriodResult& r : results) ranked.push_back(&r);
  std::sort(ranked.begin(), ranked.end(), [](const PeriodResult* a, const PeriodResult* b) {
    if (a->iiq_index != b->iiq_index) return a->iiq_index > b->iiq_index;
    return a->user_id < b->user_id;
  });
  if (index_sum > 0.0) {
    const std::size_t k = (n + 9) / 10;
    double top = 0.0;
    for (std::size_t i = 0; i < k; ++i) top += ranked[i]->iiq_index;
    summary.top_decile_share = top / index_sum;
  }

  // Hours and USD, re-checked against the weekly ceiling: a user already
  // credited `prior_week_hours` this week can only earn the remainder.
  const double weekly_cap = config.rho * config.work_hours_per_day * 5.0;
  for (const PeriodResult& r : results) {
    double prior = 0.0;
    if (auto it = prior_week_hours.find(r.user_id); it != prior_week_hours.end()) {
      prior = it->second;
    }
    const double room = std::max(0.0, weekly_cap - prior);
    const double hours = std::min(r.est_hours_saved, room);
    summary.total_hours_saved += hours;
    summary.total_usd += hours * (config.wage_usd * r.leverage);
  }

  std::map<std::string, std::vector<double>> dept_indexes;
  for (const PeriodResult& r : results) {
    const std::string& dept = users.at(r.user_id).department;
    dept_indexes[dept.empty() ? "unassigned" : dept].push_back(r.iiq_index);
  }
  for (auto& [name, values] : dept_indexes) {
    DepartmentSummary d;
    d.department = name;
    d.user_count = values.size();
    double sum = 0.0;
    for (double v : values) sum += v;
    d.mean_index = sum / static_cast<double>(values.size());
    std::sort(values.begin(), values.end());
    d.median_index = median_of_sorted(values);
    summary.per_department.push_back(std::move(d));
  }
  return summary;
}

std::vector<WeeklyHours> weekly_hours_saved(std::span<const PeriodResult> results,
                                            const EngineConfig& config) {
  config.validate();
  const std::int64_t per_week = periods_per_week(config);
  const double weekly_cap = config.rho * config.work_hours_per_day * 5.0;

  struct Bucket {
    double hours = 0.0;
    double leverage = 1.0;
    std::int64_t last_period = 0;
    bool seen = false;
  };
  std::map<std::pair<std::string, std::int64_t>, Bucket> buckets;
  for (const PeriodResult& r : results) {
    Bucket& b = buckets[{r.user_id, floor_div(r.period_index, per_week)}];
    b.hours += r.est_hours_saved;
    if (!b.seen || r.period_index >= b.last_period) {
      b.leverage = r.leverage;
      b.last_period = r.period_index;
      b.seen = true;
    }
  }

  std::vector<WeeklyHours> out;
  out.reserve(buckets.size());
  for (const auto& [key, b] : buckets) {
    WeeklyHours w;
    w.user_id = key.first;
    w.week_index = key.second;
    w.raw_hours = b.hours;
    w.capped_hours = std::min(weekly_cap, b.hours);
    w.capped_usd = w.capped_hours * (config.wage_usd * b.leverage);
    out.push_back(std::move(w));
  }
  return out;  // map order is already (user_id, week_index)
}

}  // namespace iiq
