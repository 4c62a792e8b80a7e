#include "iiq/snapshot.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "iiq/error.hpp"

namespace iiq {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json repr_to_json(const TaskRepresentation& repr) {
  ordered_json j;
  j["text"] = repr.normalized_text;
  j["keywords"] = repr.keyword_set;  // std::set serializes in sorted order
  return j;
}

TaskRepresentation repr_from_json(const ordered_json& j) {
  TaskRepresentation repr;
  repr.normalized_text = j.at("text").get<std::string>();
  for (const auto& word : j.at("keywords")) {
    repr.keyword_set.insert(word.get<std::string>());
  }
  return repr;
}

ordered_json state_to_json(const UserRecord& record) {
  const UserState& s = record.state;
  ordered_json j;
  j["token_stock"] = s.token_stock;
  j["freq_raw"] = s.freq_raw;
  j["inactive_streak"] = s.inactive_streak;
  j["leverage_level"] = s.leverage_level;
  if (s.previous_index.has_value()) {
    j["previous_index"] = *s.previous_index;
  } else {
    j["previous_index"] = nullptr;
  }
  if (s.last_delta.has_value()) {
    j["last_delta"] = *s.last_delta;
  } else {
    j["last_delta"] = nullptr;
  }
  if (s.last_period_index.has_value()) {
    j["last_period_index"] = *s.last_period_index;
  } else {
    j["last_period_index"] = nullptr;
  }
  ordered_json window = ordered_json::array();
  for (const WindowEntry& e : s.complexity_window) {
    ordered_json entry;
    entry["weighted_tier_sum"] = e.weighted_tier_sum;
    entry["novelty_sum"] = e.novelty_sum;
    window.push_back(std::move(entry));
  }
  j["complexity_window"] = std::move(window);
  ordered_json history = ordered_json::array();
  for (const TaskRepresentation& repr : s.history) {
    history.push_back(repr_to_json(repr));
  }
  j["history"] = std::move(history);
  j["department"] = record.department;
  return j;
}

UserRecord state_from_json(const ordered_json& j) {
  UserRecord record;
  UserState& s = record.state;
  s.token_stock = j.at("token_stock").get<double>();
  s.freq_raw = j.at("freq_raw").get<double>();
  s.inactive_streak = j.at("inactive_streak").get<int>();
  s.leverage_level = j.at("leverage_level").get<int>();
  if (!j.at("previous_index").is_null()) {
    s.previous_index = j.at("previous_index").get<double>();
  }
  if (!j.at("last_delta").is_null()) {
    s.last_delta = j.at("last_delta").get<double>();
  }
  if (!j.at("last_period_index").is_null()) {
    s.last_period_index = j.at("last_period_index").get<std::int64_t>();
  }
  for (const auto& entry : j.at("complexity_window")) {
    WindowEntry e;
    e.weighted_tier_sum = entry.at("weighted_tier_sum").get<double>();
    e.novelty_sum = entry.at("novelty_sum").get<double>();
    s.complexity_window.push_back(e);
  }
  for (const auto& repr : j.at("history")) {
    s.history.push_back(repr_from_json(repr));
  }
  record.department = j.at("department").get<std::string>();
  return record;
}

}  // namespace

std::string render_snapshot(const StateSnapshot& snapshot) {
  ordered_json j;
  j["format_version"] = snapshot.format_version;
  j["config_hash"] = snapshot.config_hash;
  j["config_text"] = snapshot.config_text;
  ordered_json users = ordered_json::object();
  for (const auto& [user_id, record] : snapshot.users) {
    users[user_id] = state_to_json(record);
  }
  j["users"] = std::move(users);
  return j.dump(2) + "\n";
}

StateSnapshot parse_snapshot(std::string_view text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const ordered_json::exception& e) {
    throw ParseError(std::string("snapshot is not valid JSON: ") + e.what());
  }
  StateSnapshot snapshot;
  try {
    snapshot.format_version = j.at("format_version").get<int>();
    if (snapshot.format_version != 1) {
      throw ParseError("unsupported snapshot format version " +
                       std::to_string(snapshot.format_version));
    }
    snapshot.config_hash = j.at("config_hash").get<std::string>();
    snapshot.config_text = j.at("config_text").get<std::string>();
    for (const auto& [user_id, record] : j.at("users").items()) {
      snapshot.users.emplace(user_id, state_from_json(record));
    }
  } catch (const ordered_json::exception& e) {
    throw ParseError(std::string("malformed snapshot: ") + e.what());
  }
  return snapshot;
}

StateSnapshot load_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open snapshot file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_snapshot(buffer.str());
}

void save_snapshot(const std::string& path, const StateSnapshot& snapshot) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write snapshot file: " + tmp);
    out << render_snapshot(snapshot);
    if (!out.flush()) throw Error("failed writing snapshot file: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw Error("failed to move snapshot into place: " + path);
  }
}

}  // namespace iiq
