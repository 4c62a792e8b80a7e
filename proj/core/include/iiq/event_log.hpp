#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "iiq/types.hpp"

namespace iiq {

// One parsed event-log line. `level` is present when the record carried the
// user's leverage level (required the first time a user appears).
struct RawEventRecord {
  InteractionEvent event;
  std::optional<int> level;
  int line = 0;
};

struct EventLogParse {
  std::vector<RawEventRecord> records;
  std::vector<std::string> warnings;
};

// Line-delimited JSON, one object per line. Recognized fields: user_id, ts
// (ISO-8601 UTC), prompt, tokens, tier, agent_turns (default 0), run_hours
// (default 0), level, department. A `weight` field is accepted and ignored
// with a warning (reserved name); any other unknown field is an error.
// Blank lines are skipped. Errors carry the 1-based line number.
EventLogParse parse_event_log(std::string_view text);

RawEventRecord parse_event_line(std::string_view line, int line_no);

// Writes events back out as JSONL. The first record of each user carries its
// level from `levels` and, when present, its department from `departments`.
// Prompts are written as the normalized task text.
std::string render_event_log(std::span<const InteractionEvent> events,
                             const std::map<std::string, int>& levels,
                             const std::map<std::string, std::string>& departments = {});

}  // namespace iiq
