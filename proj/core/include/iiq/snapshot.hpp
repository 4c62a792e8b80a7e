#pragma once

#include <map>
#include <string>
#include <string_view>

#include "iiq/types.hpp"

namespace iiq {

// Durable engine state between ingestion runs. The embedded config hash
// refuses snapshots produced under different tunables; the full config text
// rides along so downstream commands can re-derive the exact settings.
struct StateSnapshot {
  int format_version = 1;
  std::string config_hash;
  std::string config_text;
  std::map<std::string, UserRecord> users;

  bool operator==(const StateSnapshot&) const = default;
};

// JSON rendering with stable field order and sorted users; rendering the
// parse of any rendered snapshot reproduces it byte for byte.
std::string render_snapshot(const StateSnapshot& snapshot);
StateSnapshot parse_snapshot(std::string_view text);

StateSnapshot load_snapshot(const std::string& path);

// Write-temp-then-rename, so a crash never leaves a half-written snapshot.
void save_snapshot(const std::string& path, const StateSnapshot& snapshot);

}  // namespace iiq
