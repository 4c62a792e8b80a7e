#pragma once

#include <array>
#include <cstdint>
#include <deque>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace iiq {

// Longest normalized-text prefix kept for edit-distance comparison. Keyword
// extraction runs on the full text before the cap is applied, so keyword
// similarity is unaffected by it.
inline constexpr std::size_t kMaxComparableChars = 2000;

// Normalized task text plus the keyword set used by the overlap scorer.
// Construction is the single normalization point: lowercase ASCII, collapse
// whitespace runs, trim, extract alphanumeric terms of length >= 3.
struct TaskRepresentation {
  std::string normalized_text;         // <= kMaxComparableChars chars
  std::set<std::string> keyword_set;   // sorted, deduplicated

  static TaskRepresentation from_raw(std::string_view raw_text);

  bool operator==(const TaskRepresentation&) const = default;
};

std::string normalize_text(std::string_view raw);
std::set<std::string> extract_keywords(std::string_view normalized);

// One AI interaction as seen by the engine.
struct InteractionEvent {
  std::string user_id;
  std::int64_t timestamp = 0;          // epoch seconds, UTC
  TaskRepresentation task_repr;
  std::int64_t token_count = 0;        // generated tokens, >= 0
  int complexity_tier = 1;             // 1..4
  std::int64_t agent_turns = 0;        // model-initiated turns, >= 0
  double active_run_hours = 0.0;       // active autonomous runtime, >= 0
  std::optional<std::string> department;
};

// Role-tier multiplier table. Levels are 1-based and contiguous;
// multipliers must be positive and strictly increasing.
struct LeverageTable {
  std::vector<double> multipliers;     // index 0 holds level 1

  static LeverageTable defaults();     // {1, 1.5, 2.5, 4, 7, 14, 25, 50}

  int max_level() const { return static_cast<int>(multipliers.size()); }
  bool valid_level(int level) const { return level >= 1 && level <= max_level(); }
  double at(int level) const;          // throws Error on unknown level

  bool operator==(const LeverageTable&) const = default;
};

// Task-complexity tier multipliers, tiers 1..4.
struct ComplexityTable {
  std::array<double, 4> multipliers{};

  static ComplexityTable defaults();   // {1, 2, 3.5, 5}

  double at(int tier) const;           // throws Error on unknown tier

  bool operator==(const ComplexityTable&) const = default;
};

enum class SimilarityMethod { edit, keyword, hybrid };

std::string_view to_string(SimilarityMethod method);
SimilarityMethod similarity_method_from_string(std::string_view name);

// Every engine tunable. Defaults are the shipped calibration; load_config
// overrides individual keys from a flat key = value document.
struct EngineConfig {
  double alpha_T_daily = 0.05;         // token-stock decay per day, (0,1)
  double alpha_F_daily = 0.05;         // frequency decay per day, (0,1)
  int grace_periods = 3;               // recency grace threshold g, >= 0
  double lambda_daily = 0.30;          // recency decay rate per day, > 0
  int complexity_window = 14;          // rolling window length W, periods
  double omega_turns = 0.18;           // autonomy weight per agent turn
  double omega_hours = 1.6;            // autonomy weight per active run hour
  double gamma = 0.18;                 // autonomy multiplier scale
  LeverageTable leverage = LeverageTable::defaults();
  ComplexityTable complexity = ComplexityTable::defaults();
  double max_expected = 5.0e7;         // index normalization ceiling, > 1
  double k_hours_per_1k = 0.1;         // est. hours saved per 1k effective tokens
  double rho = 0.75;                   // max displaceable share of work time, (0,1]
  double wage_usd = 40.0;              // baseline hourly wage
  double work_hours_per_day = 8.0;
  double period_hours = 24.0;          // one of {1,2,3,4,6,8,12,24}
  int history_capacity = 50;           // novelty comparison history length
  SimilarityMethod similarity_method = SimilarityMethod::hybrid;

  // Throws ConfigError naming the offending key.
  void validate() const;

  double alpha_T_periodic() const;
  double alpha_F_periodic() const;
  double lambda_periodic() const;
  double work_hours_available() const;  // work hours in one period

  bool operator==(const EngineConfig&) const = default;
};

// Per-period complexity-window entry: novelty-weighted tier-multiplier sum
// and the matching novelty sum.
struct WindowEntry {
  double weighted_tier_sum = 0.0;
  double novelty_sum = 0.0;

  bool operator==(const WindowEntry&) const = default;
};

// All recurrent per-user state. Mutated only by engine operations; one
// user's periods are processed strictly in order.
struct UserState {
  double token_stock = 0.0;
  double freq_raw = 0.0;
  int inactive_streak = 0;                       // consecutive empty periods
  std::deque<WindowEntry> complexity_window;     // length <= complexity_window
  std::deque<TaskRepresentation> history;        // length <= history_capacity
  int leverage_level = 1;
  std::optional<double> previous_index;          // last IIQ index
  std::optional<double> last_delta;              // last delta, for reporting
  std::optional<std::int64_t> last_period_index;

  bool operator==(const UserState&) const = default;
};

// A user's recurrent state plus the org metadata carried alongside it in
// snapshots and aggregation. An empty department groups as "unassigned".
struct UserRecord {
  UserState state;
  std::string department;

  bool operator==(const UserRecord&) const = default;
};

// Novelty-weighted per-period sums feeding the factor updates.
struct PeriodMasses {
  double effective_tokens = 0.0;    // sum of nu * tokens
  double distinct_mass = 0.0;       // sum of nu
  double autonomy_mass = 0.0;       // sum of nu * u
  double weighted_tier_sum = 0.0;   // sum of nu * tier multiplier
  std::int64_t event_count = 0;
};

// One user-period evaluation: the six factors, raw score, normalized index
// and the estimated interpretation quantities.
struct PeriodResult {
  std::string user_id;
  std::int64_t period_index = 0;
  double token_stock = 0.0;       // csv column T
  double frequency = 1.0;         // csv column F
  double recency = 1.0;           // csv column R
  double leverage = 1.0;          // csv column V
  double complexity = 1.0;        // csv column C
  double autonomy = 1.0;          // csv column A
  double effective_tokens = 0.0;  // csv column G
  double distinct_mass = 0.0;     // csv column D
  double autonomy_mass = 0.0;     // csv column U
  double iai = 0.0;
  double iiq_index = 0.0;
  std::optional<double> delta_iiq;
  double est_hours_saved = 0.0;
  double est_usd = 0.0;
};

}  // namespace iiq
