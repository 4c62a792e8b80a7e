#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "iiq/event_log.hpp"
#include "iiq/types.hpp"

namespace iiq {

struct IngestOutcome {
  std::vector<PeriodResult> results;        // sorted by (period_index, user_id)
  std::map<std::string, UserRecord> users;  // advanced states
  std::vector<std::string> warnings;
};

// Drives every user across all periods spanned by the log. Existing users
// resume right after their snapshot frontier; new users start at their first
// event's period and must carry a level on their first record. All users end
// at the last period seen anywhere in the log, with empty periods
// materialized, so decay and recency keep moving for idle users. Splitting a
// log at a period boundary and ingesting the halves sequentially reproduces
// the one-shot outcome exactly.
//
// Errors: per-user timestamps out of order, a new user without a level, a
// level change for a known user, or an event at or before a user's frontier
// ("timestamp earlier than snapshot frontier").
IngestOutcome ingest_events(std::span<const RawEventRecord> records,
                            std::map<std::string, UserRecord> users,
                            const EngineConfig& config);

}  // namespace iiq
