#pragma once

#include <string>
#include <string_view>

#include "iiq/types.hpp"

namespace iiq {

// Parses a flat "key = value" document ('#' starts a comment). Unspecified
// keys keep their defaults; unknown keys are an error. The returned config
// is validated. Throws ConfigError.
EngineConfig load_config(std::string_view text);

// Canonical textual form of a config. load_config(render_config(c)) == c.
std::string render_config(const EngineConfig& config);

// FNV-1a 64 over the canonical rendering, as 16 hex digits. Snapshots made
// under one hash are refused under another.
std::string config_hash(const EngineConfig& config);

// Shortest decimal form that parses back to exactly the same double.
std::string format_double_shortest(double value);

}  // namespace iiq
