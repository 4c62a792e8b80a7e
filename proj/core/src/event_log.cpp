#include "iiq/event_log.hpp"

#include <set>

#include <json.hpp>

#include "iiq/error.hpp"
#include "iiq/time.hpp"

namespace iiq {

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

[[noreturn]] void fail(int line_no, const std::string& what) {
  throw ParseError("line " + std::to_string(line_no) + ": " + what);
}

std::string get_string(const json& obj, const char* field, int line_no) {
  const auto it = obj.find(field);
  if (it == obj.end()) fail(line_no, std::string("missing field '") + field + "'");
  if (!it->is_string()) fail(line_no, std::string("field '") + field + "' must be a string");
  return it->get<std::string>();
}

std::int64_t get_integer(const json& obj, const char* field, int line_no,
                         std::optional<std::int64_t> fallback = {}) {
  const auto it = obj.find(field);
  if (it == obj.end()) {
    if (fallback.has_value()) return *fallback;
    fail(line_no, std::string("missing field '") + field + "'");
  }
  if (!it->is_number_integer()) {
    fail(line_no, std::string("field '") + field + "' must be an integer");
  }
  return it->get<std::int64_t>();
}

}  // namespace

RawEventRecord parse_event_line(std::string_view line, int line_no) {
  json obj;
  try {
    obj = json::parse(line);
  } catch (const json::exception& e) {
    fail(line_no, std::string("not valid JSON: ") + e.what());
  }
  if (!obj.is_object()) fail(line_no, "record must be a JSON object");

  static const std::set<std::string> kKnown = {"user_id", "ts",         "prompt",
                                               "tokens",  "tier",       "agent_turns",
                                               "run_hours", "level",    "department",
                                               "weight"};
  for (const auto& [key, value] : obj.items()) {
    if (!kKnown.contains(key)) fail(line_no, "unknown field '" + key + "'");
  }

  RawEventRecord record;
  record.line = line_no;
  record.event.user_id = get_string(obj, "user_id", line_no);
  if (record.event.user_id.empty()) fail(line_no, "user_id must not be empty");

  const std::string ts = get_string(obj, "ts", line_no);
  try {
    record.event.timestamp = parse_iso8601_utc(ts);
  } catch (const ParseError& e) {
    fail(line_no, e.what());
  }

  record.event.task_repr = TaskRepresentation::from_raw(get_string(obj, "prompt", line_no));

  record.event.token_count = get_integer(obj, "tokens", line_no);
  if (record.event.token_count < 0) fail(line_no, "tokens must be nonnegative");

  const std::int64_t tier = get_integer(obj, "tier", line_no);
  if (tier < 1 || tier > 4) fail(line_no, "tier must be between 1 and 4");
  record.event.complexity_tier = static_cast<int>(tier);

  record.event.agent_turns = get_integer(obj, "agent_turns", line_no, 0);
  if (record.event.agent_turns < 0) fail(line_no, "agent_turns must be nonnegative");

  if (const auto it = obj.find("run_hours"); it != obj.end()) {
    if (!it->is_number()) fail(line_no, "field 'run_hours' must be a number");
    record.event.active_run_hours = it->get<double>();
    if (record.event.active_run_hours < 0.0) fail(line_no, "run_hours must be nonnegative");
  }

  if (obj.contains("level")) {
    const std::int64_t level = get_integer(obj, "level", line_no);
    if (level < 1 || level > 64) fail(line_no, "level out of range");
    record.level = static_cast<int>(level);
  }

  if (const auto it = obj.find("department"); it != obj.end()) {
    if (!it->is_string()) fail(line_no, "field 'department' must be a string");
    record.event.department = it->get<std::string>();
  }
  return record;
}

EventLogParse parse_event_log(std::string_view text) {
  EventLogParse parse;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() : eol + 1;
    ++line_no;

    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    bool blank = true;
    for (char c : line) {
      if (c != ' ' && c != '\t') {
        blank = false;
        break;
      }
    }
    if (blank) continue;

    if (line.find("\"weight\"") != std::string_view::npos) {
      parse.warnings.push_back("line " + std::to_string(line_no) +
                               ": field 'weight' is reserved and ignored");
    }
    parse.records.push_back(parse_event_line(line, line_no));
  }
  return parse;
}

std::string render_event_log(std::span<const InteractionEvent> events,
                             const std::map<std::string, int>& levels,
                             const std::map<std::string, std::string>& departments) {
  std::string out;
  std::set<std::string> seen;
  for (const InteractionEvent& ev : events) {
    ordered_json obj;
    obj["user_id"] = ev.user_id;
    obj["ts"] = format_iso8601_utc(ev.timestamp);
    obj["prompt"] = ev.task_repr.normalized_text;
    obj["tokens"] = ev.token_count;
    obj["tier"] = ev.complexity_tier;
    obj["agent_turns"] = ev.agent_turns;
    obj["run_hours"] = ev.active_run_hours;
    if (seen.insert(ev.user_id).second) {
      if (const auto it = levels.find(ev.user_id); it != levels.end()) {
        obj["level"] = it->second;
      }
      if (const auto it = departments.find(ev.user_id); it != departments.end()) {
        obj["department"] = it->second;
      }
    }
    out += obj.dump();
    out += '\n';
  }
  return out;
}

}  // namespace iiq
