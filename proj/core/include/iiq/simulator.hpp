#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "iiq/types.hpp"

namespace iiq {

// All synthetic timestamps hang off this instant: 2026-01-05T00:00:00Z, a
// Monday, so day index d has weekday d % 7 (0 = Monday).
inline constexpr std::int64_t kSimBaseEpoch = 1767571200;

// Fixed 64-bit linear congruential generator (Knuth MMIX multiplier) with an
// xorshift output mix, plus Box-Muller for normals. Hand-rolled rather than
// <random> because the standard distributions are implementation-defined and
// traces must reproduce bit-for-bit everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();
  double next_unit();  // uniform in [0, 1)
  std::int64_t next_int(std::int64_t lo, std::int64_t hi);  // inclusive
  double next_real(double lo, double hi);
  double next_normal();  // standard normal

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

enum class ActivityPattern { daily, weekdays, weekly, burst };

std::string_view to_string(ActivityPattern pattern);
ActivityPattern activity_pattern_from_string(std::string_view name);

// Everything needed to generate one synthetic user's trace.
struct ProfileSpec {
  std::string name;
  std::string user_id;
  int days = 30;
  std::int64_t min_interactions = 1;  // per active day
  std::int64_t max_interactions = 1;
  ActivityPattern pattern = ActivityPattern::daily;
  std::vector<int> burst_days;        // day indices, pattern == burst only
  double token_mu = 6.0;              // mean of ln(tokens)
  double token_sigma = 0.5;           // sd of ln(tokens)
  double duplicate_prob = 0.0;        // verbatim repeat of a prior prompt
  double partial_sim_prob = 0.0;      // shares half a prior keyword set
  std::array<double, 4> complexity_mix{1.0, 0.0, 0.0, 0.0};
  std::int64_t min_agent_turns = 0;
  std::int64_t max_agent_turns = 0;
  double min_run_hours = 0.0;
  double max_run_hours = 0.0;
  int leverage_level = 1;
  std::uint64_t seed = 0;

  void validate() const;  // throws ConfigError
};

// Deterministic trace generation. Fresh prompts use globally unique words
// (keyword overlap exactly 0 within the trace); duplicates reuse a prior
// TaskRepresentation verbatim (similarity 1 under every scorer); partially
// similar prompts keep half of a prior prompt's keywords. Events come out
// sorted by timestamp, all inside working hours of their day.
std::vector<InteractionEvent> generate_trace(const ProfileSpec& spec);

// Scenario file: `[scenario NAME]` sections of `key = value` lines. Throws
// ConfigError with a line number on anything unrecognized.
std::map<std::string, ProfileSpec> parse_scenarios(std::string_view text);

// Scenario profiles compiled in from the versioned definitions file.
const std::map<std::string, ProfileSpec>& builtin_scenarios();

struct ScenarioRun {
  ProfileSpec spec;
  std::vector<InteractionEvent> trace;
  std::vector<PeriodResult> results;
};

// Generates and evaluates one built-in scenario (A-D) over its full day
// range, materializing inactive periods. Throws Error on unknown names.
ScenarioRun run_scenario(std::string_view name, const EngineConfig& config,
                         std::optional<std::uint64_t> seed_override = {});

// Plot-ready numeric table; first column is the day offset from the trace
// start, remaining columns are one series each.
struct SeriesTable {
  std::string family;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

// The 45-day usage patterns behind the temporal-response figure:
// "recurring", "short_interruption", "long_interruption", "weekly_episodic".
std::vector<InteractionEvent> temporal_pattern_trace(std::string_view pattern,
                                                     std::uint64_t seed);

// Figure families:
//  - "anti_gaming": three 20-day traces with matched raw-token totals and
//    zero / medium / high duplication; cumulative raw tokens, effective
//    tokens, and distinct-task mass per regime.
//  - "temporal_response": 45-day index series for the four usage patterns
//    plus the long interruption re-evaluated with no grace periods.
// Both families are evaluated under keyword similarity so the fully-novel
// ceilings are exact.
SeriesTable figure_traces(std::string_view family);

}  // namespace iiq
