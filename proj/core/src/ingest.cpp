#include "iiq/ingest.hpp"

#include <algorithm>

#include "iiq/engine.hpp"
#include "iiq/error.hpp"
#include "iiq/time.hpp"

namespace iiq {

IngestOutcome ingest_events(std::span<const RawEventRecord> records,
                            std::map<std::string, UserRecord> users,
                            const EngineConfig& config) {
  config.validate();
  IngestOutcome outcome;

  struct PerUser {
    std::vector<const RawEventRecord*> records;
  };
  std::map<std::string, PerUser> by_user;
  std::int64_t max_period = 0;
  bool any_event = false;
  for (const RawEventRecord& record : records) {
    auto& bucket = by_user[record.event.user_id];
    if (!bucket.records.empty() &&
        record.event.timestamp < bucket.records.back()->event.timestamp) {
      throw Error("line " + std::to_string(record.line) + ": events for user " +
                  record.event.user_id + " not sorted by timestamp");
    }
    bucket.records.push_back(&record);
    const std::int64_t period = period_index_of(record.event.timestamp, config.period_hours);
    max_period = any_event ? std::max(max_period, period) : period;
    any_event = true;
  }

  // Register new users and validate levels/frontiers up front.
  for (const auto& [user_id, bucket] : by_user) {
    const auto existing = users.find(user_id);
    if (existing == users.end()) {
      const RawEventRecord& first = *bucket.records.front();
      if (!first.level.has_value()) {
        throw Error("line " + std::to_string(first.line) + ": unknown user " + user_id +
                    " without a level");
      }
      UserRecord record;
      record.state = init_state(*first.level, config);
      users.emplace(user_id, std::move(record));
    }
    UserRecord& record = users.at(user_id);
    for (const RawEventRecord* r : bucket.records) {
      if (r->level.has_value() && *r->level != record.state.leverage_level) {
        throw Error("line " + std::to_string(r->line) + ": level change for user " + user_id +
                    " (snapshot says " + std::to_string(record.state.leverage_level) + ")");
      }
      if (record.state.last_period_index.has_value() &&
          period_index_of(r->event.timestamp, config.period_hours) <=
              *record.state.last_period_index) {
        throw Error("line " + std::to_string(r->line) +
                    ": timestamp earlier than snapshot frontier for user " + user_id);
      }
      if (r->event.department.has_value() && !r->event.department->empty()) {
        record.department = *r->event.department;
      }
    }
  }

  if (!any_event) {
    outcome.users = std::move(users);
    return outcome;
  }

  // Every user advances to the last period spanned by the log.
  for (auto& [user_id, record] : users) {
    std::vector<InteractionEvent> events;
    if (const auto it = by_user.find(user_id); it != by_user.end()) {
      events.reserve(it->second.records.size());
      for (const RawEventRecord* r : it->second.records) events.push_back(r->event);
    }

    std::int64_t start;
    if (record.state.last_period_index.has_value()) {
      start = *record.state.last_period_index + 1;
    } else if (!events.empty()) {
      start = period_index_of(events.front().timestamp, config.period_hours);
    } else {
      continue;  // brand-new user with no events: nothing to advance
    }
    if (start > max_period) continue;  // snapshot already ahead of this log

    std::vector<PeriodResult> results =
        run_user_trace(record.state, events, config, start, max_period);
    for (PeriodResult& r : results) r.user_id = user_id;  // also fills idle-user rows
    outcome.results.insert(outcome.results.end(), std::make_move_iterator(results.begin()),
                           std::make_move_iterator(results.end()));
  }

  std::sort(outcome.results.begin(), outcome.results.end(),
            [](const PeriodResult& a, const PeriodResult& b) {
              if (a.period_index != b.period_index) return a.period_index < b.period_index;
              return a.user_id < b.user_id;
            });
  outcome.users = std::move(users);
  return outcome;
}

}  // namespace iiq
