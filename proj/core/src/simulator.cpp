#include "iiq/simulator.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "iiq/engine.hpp"
#include "iiq/error.hpp"
#include "iiq/scenarios_data.hpp"
#include "iiq/time.hpp"

namespace iiq {

namespace {

constexpr std::uint64_t kLcgMultiplier = 6364136223846793005ULL;
constexpr std::uint64_t kLcgIncrement = 1442695040888963407ULL;

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> parts;
  while (true) {
    const std::size_t comma = s.find(',');
    parts.push_back(trim(s.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return parts;
}

template <typename T>
T parse_number(std::string_view token, int line) {
  token = trim(token);
  T value{};
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw ConfigError("bad numeric value '" + std::string(token) + "' (line " +
                      std::to_string(line) + ")");
  }
  return value;
}

std::string fresh_word(int counter) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "t%06d", counter);
  return buf;
}

std::string fresh_text(int& counter, int words) {
  std::string text;
  for (int i = 0; i < words; ++i) {
    if (!text.empty()) text += ' ';
    text += fresh_word(counter++);
  }
  return text;
}

bool day_is_active(const ProfileSpec& spec, int day) {
  switch (spec.pattern) {
    case ActivityPattern::daily:
      return true;
    case ActivityPattern::weekdays:
      return day % 7 < 5;
    case ActivityPattern::weekly:
      return day % 7 == 0;
    case ActivityPattern::burst:
      return std::find(spec.burst_days.begin(), spec.burst_days.end(), day) !=
             spec.burst_days.end();
  }
  return false;
}

EngineConfig keyword_config() {
  EngineConfig config;
  config.similarity_method = SimilarityMethod::keyword;
  return config;
}

std::int64_t base_period(const EngineConfig& config) {
  return period_index_of(kSimBaseEpoch, config.period_hours);
}

}  // namespace

Rng::Rng(std::uint64_t seed) : state_(seed) {
  next_u64();  // decouple the first output from the raw seed
}

std::uint64_t Rng::next_u64() {
  state_ = state_ * kLcgMultiplier + kLcgIncrement;
  std::uint64_t x = state_;
  x ^= x >> 33;
  x *= 0xFF51AFD7ED558CCDULL;
  x ^= x >> 33;
  return x;
}

double Rng::next_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::int64_t Rng::next_int(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw Error("next_int: empty range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(next_u64() % span);
}

double Rng::next_real(double lo, double hi) {
  return lo + (hi - lo) * next_unit();
}

double Rng::next_normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
  const double u2 = next_unit();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

std::string_view to_string(ActivityPattern pattern) {
  switch (pattern) {
    case ActivityPattern::daily:
      return "daily";
    case ActivityPattern::weekdays:
      return "weekdays";
    case ActivityPattern::weekly:
      return "weekly";
    case ActivityPattern::burst:
      return "burst";
  }
  return "daily";
}

ActivityPattern activity_pattern_from_string(std::string_view name) {
  if (name == "daily") return ActivityPattern::daily;
  if (name == "weekdays") return ActivityPattern::weekdays;
  if (name == "weekly") return ActivityPattern::weekly;
  if (name == "burst") return ActivityPattern::burst;
  throw ConfigError("unknown activity pattern '" + std::string(name) + "'");
}

void ProfileSpec::validate() const {
  if (user_id.empty()) throw ConfigError("profile needs a user_id");
  if (days < 1) throw ConfigError("days must be positive");
  if (min_interactions < 0 || max_interactions < min_interactions) {
    throw ConfigError("bad interactions range");
  }
  if (max_interactions > 1000) throw ConfigError("interactions per day capped at 1000");
  if (token_sigma < 0.0) throw ConfigError("token_sigma must be nonnegative");
  if (duplicate_prob < 0.0 || duplicate_prob > 1.0 || partial_sim_prob < 0.0 ||
      partial_sim_prob > 1.0 || duplicate_prob + partial_sim_prob > 1.0) {
    throw ConfigError("duplicate/partial probabilities must stay within [0,1]");
  }
  double mix_sum = 0.0;
  for (double p : complexity_mix) {
    if (p < 0.0) throw ConfigError("complexity_mix entries must be nonnegative");
    mix_sum += p;
  }
  if (std::abs(mix_sum - 1.0) > 1e-9) throw ConfigError("complexity_mix must sum to 1");
  if (min_agent_turns < 0 || max_agent_turns < min_agent_turns) {
    throw ConfigError("bad agent_turns range");
  }
  if (min_run_hours < 0.0 || max_run_hours < min_run_hours) {
    throw ConfigError("bad run_hours range");
  }
  if (leverage_level < 1) throw ConfigError("leverage level must be >= 1");
  if (pattern == ActivityPattern::burst) {
    if (burst_days.empty()) throw ConfigError("burst pattern needs burst_days");
    for (int d : burst_days) {
      if (d < 0 || d >= days) throw ConfigError("burst day outside the simulated range");
    }
  }
}

std::vector<InteractionEvent> generate_trace(const ProfileSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  std::vector<InteractionEvent> events;
  int word_counter = 0;

  for (int day = 0; day < spec.days; ++day) {
    if (!day_is_active(spec, day)) continue;
    const std::int64_t count = rng.next_int(spec.min_interactions, spec.max_interactions);
    if (count == 0) continue;
    const std::int64_t slot = 8 * 3600 / count;  // events spread over 09:00-17:00

    for (std::int64_t k = 0; k < count; ++k) {
      InteractionEvent ev;
      ev.user_id = spec.user_id;

      const double kind = rng.next_unit();
      if (!events.empty() && kind < spec.duplicate_prob) {
        const auto prior = static_cast<std::size_t>(
            rng.next_int(0, static_cast<std::int64_t>(events.size()) - 1));
        ev.task_repr = events[prior].task_repr;
      } else if (!events.empty() && kind < spec.duplicate_prob + spec.partial_sim_prob) {
        const auto prior = static_cast<std::size_t>(
            rng.next_int(0, static_cast<std::int64_t>(events.size()) - 1));
        const auto& prior_words = events[prior].task_repr.keyword_set;
        const std::size_t keep = (prior_words.size() + 1) / 2;
        std::string text;
        std::size_t taken = 0;
        for (const std::string& w : prior_words) {
          if (taken++ == keep) break;
          if (!text.empty()) text += ' ';
          text += w;
        }
        const int extra = static_cast<int>(std::max<std::size_t>(keep, 1));
        if (!text.empty()) text += ' ';
        text += fresh_text(word_counter, extra);
        ev.task_repr = TaskRepresentation::from_raw(text);
      } else {
        const int words = static_cast<int>(rng.next_int(4, 8));
        ev.task_repr = TaskRepresentation::from_raw(fresh_text(word_counter, words));
      }

      const double z = rng.next_normal();
      const double raw_tokens = std::exp(spec.token_mu + spec.token_sigma * z);
      ev.token_count = std::clamp<std::int64_t>(std::llround(raw_tokens), 1, 10'000'000);

      const double tier_draw = rng.next_unit();
      double cumulative = 0.0;
      ev.complexity_tier = 4;
      for (int tier = 1; tier <= 4; ++tier) {
        cumulative += spec.complexity_mix[static_cast<std::size_t>(tier - 1)];
        if (tier_draw < cumulative) {
          ev.complexity_tier = tier;
          break;
        }
      }

      ev.agent_turns = rng.next_int(spec.min_agent_turns, spec.max_agent_turns);
      ev.active_run_hours = rng.next_real(spec.min_run_hours, spec.max_run_hours);

      const std::int64_t jitter = slot > 1 ? rng.next_int(0, slot - 1) : 0;
      ev.timestamp = kSimBaseEpoch + static_cast<std::int64_t>(day) * 86400 + 9 * 3600 +
                     k * slot + jitter;
      events.push_back(std::move(ev));
    }
  }
  return events;
}

std::map<std::string, ProfileSpec> parse_scenarios(std::string_view text) {
  std::map<std::string, ProfileSpec> specs;
  ProfileSpec* current = nullptr;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    line = trim(line);
    if (line.empty() || line.front() == '#') continue;

    if (line.front() == '[') {
      constexpr std::string_view kPrefix = "[scenario ";
      if (!line.starts_with(kPrefix) || line.back() != ']') {
        throw ConfigError("bad section header (line " + std::to_string(line_no) + ")");
      }
      const std::string name(
          trim(line.substr(kPrefix.size(), line.size() - kPrefix.size() - 1)));
      if (name.empty() || specs.contains(name)) {
        throw ConfigError("bad or duplicate scenario name (line " + std::to_string(line_no) +
                          ")");
      }
      current = &specs[name];
      current->name = name;
      continue;
    }

    if (current == nullptr) {
      throw ConfigError("key outside a scenario section (line " + std::to_string(line_no) + ")");
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("expected key = value (line " + std::to_string(line_no) + ")");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));

    if (key == "user_id") {
      current->user_id = std::string(value);
    } else if (key == "days") {
      current->days = parse_number<int>(value, line_no);
    } else if (key == "pattern") {
      current->pattern = activity_pattern_from_string(value);
    } else if (key == "burst_days") {
      current->burst_days.clear();
      for (std::string_view part : split_list(value)) {
        current->burst_days.push_back(parse_number<int>(part, line_no));
      }
    } else if (key == "interactions") {
      const auto parts = split_list(value);
      if (parts.size() != 2) {
        throw ConfigError("interactions wants min,max (line " + std::to_string(line_no) + ")");
      }
      current->min_interactions = parse_number<std::int64_t>(parts[0], line_no);
      current->max_interactions = parse_number<std::int64_t>(parts[1], line_no);
    } else if (key == "token_lognormal") {
      const auto parts = split_list(value);
      if (parts.size() != 2) {
        throw ConfigError("token_lognormal wants mu,sigma (line " + std::to_string(line_no) +
                          ")");
      }
      current->token_mu = parse_number<double>(parts[0], line_no);
      current->token_sigma = parse_number<double>(parts[1], line_no);
    } else if (key == "duplicate_prob") {
      current->duplicate_prob = parse_number<double>(value, line_no);
    } else if (key == "partial_sim_prob") {
      current->partial_sim_prob = parse_number<double>(value, line_no);
    } else if (key == "complexity_mix") {
      const auto parts = split_list(value);
      if (parts.size() != 4) {
        throw ConfigError("complexity_mix wants four probabilities (line " +
                          std::to_string(line_no) + ")");
      }
      for (std::size_t i = 0; i < 4; ++i) {
        current->complexity_mix[i] = parse_number<double>(parts[i], line_no);
      }
    } else if (key == "agent_turns") {
      const auto parts = split_list(value);
      if (parts.size() != 2) {
        throw ConfigError("agent_turns wants min,max (line " + std::to_string(line_no) + ")");
      }
      current->min_agent_turns = parse_number<std::int64_t>(parts[0], line_no);
      current->max_agent_turns = parse_number<std::int64_t>(parts[1], line_no);
    } else if (key == "run_hours") {
      const auto parts = split_list(value);
      if (parts.size() != 2) {
        throw ConfigError("run_hours wants min,max (line " + std::to_string(line_no) + ")");
      }
      current->min_run_hours = parse_number<double>(parts[0], line_no);
      current->max_run_hours = parse_number<double>(parts[1], line_no);
    } else if (key == "level") {
      current->leverage_level = parse_number<int>(value, line_no);
    } else if (key == "seed") {
      current->seed = parse_number<std::uint64_t>(value, line_no);
    } else {
      throw ConfigError("unknown scenario key '" + key + "' (line " + std::to_string(line_no) +
                        ")");
    }
  }

  for (const auto& [name, spec] : specs) {
    try {
      spec.validate();
    } catch (const ConfigError& e) {
      throw ConfigError("scenario " + name + ": " + e.what());
    }
  }
  return specs;
}

const std::map<std::string, ProfileSpec>& builtin_scenarios() {
  static const std::map<std::string, ProfileSpec> specs = parse_scenarios(detail::kScenariosText);
  return specs;
}

ScenarioRun run_scenario(std::string_view name, const EngineConfig& config,
                         std::optional<std::uint64_t> seed_override) {
  const auto& specs = builtin_scenarios();
  const auto it = specs.find(std::string(name));
  if (it == specs.end()) {
    throw Error("unknown scenario name: " + std::string(name));
  }
  ScenarioRun run;
  run.spec = it->second;
  if (seed_override.has_value()) run.spec.seed = *seed_override;
  run.trace = generate_trace(run.spec);

  const std::int64_t periods_per_day = std::llround(24.0 / config.period_hours);
  const std::int64_t start = base_period(config);
  const std::int64_t end = start + static_cast<std::int64_t>(run.spec.days) * periods_per_day - 1;
  run.results = run_user_trace(run.trace, config, run.spec.leverage_level, start, end);
  return run;
}

std::vector<InteractionEvent> temporal_pattern_trace(std::string_view pattern,
                                                     std::uint64_t seed) {
  ProfileSpec spec;
  spec.name = std::string(pattern);
  spec.user_id = "fig-" + std::string(pattern);
  spec.days = 45;
  spec.min_interactions = 2;
  spec.max_interactions = 3;
  spec.token_mu = 5.8;
  spec.token_sigma = 0.4;
  spec.complexity_mix = {0.6, 0.4, 0.0, 0.0};
  spec.leverage_level = 2;
  spec.seed = seed;

  auto all_days_except = [&](int gap_first, int gap_last) {
    std::vector<int> days;
    for (int d = 0; d < spec.days; ++d) {
      if (d < gap_first || d > gap_last) days.push_back(d);
    }
    return days;
  };

  if (pattern == "recurring") {
    spec.pattern = ActivityPattern::daily;
  } else if (pattern == "short_interruption") {
    spec.pattern = ActivityPattern::burst;
    spec.burst_days = all_days_except(20, 21);
  } else if (pattern == "long_interruption") {
    spec.pattern = ActivityPattern::burst;
    spec.burst_days = all_days_except(18, 29);
  } else if (pattern == "weekly_episodic") {
    spec.pattern = ActivityPattern::weekly;
  } else {
    throw Error("unknown temporal pattern: " + std::string(pattern));
  }
  return generate_trace(spec);
}

SeriesTable figure_traces(std::string_view family) {
  if (family == "anti_gaming") {
    ProfileSpec base;
    base.name = "anti_gaming";
    base.user_id = "fig-zero-dup";
    base.days = 20;
    base.min_interactions = 1;
    base.max_interactions = 1;
    base.token_mu = 6.0;
    base.token_sigma = 0.4;
    base.complexity_mix = {0.5, 0.5, 0.0, 0.0};
    base.leverage_level = 1;
    base.seed = 7001;

    const std::vector<InteractionEvent> zero = generate_trace(base);

    // Same events and token counts, progressively heavier prompt reuse:
    // matched raw volume, diverging effective volume.
    std::vector<InteractionEvent> medium = zero;
    for (std::size_t i = 1; i < medium.size(); i += 2) {
      medium[i].task_repr = medium[i - 1].task_repr;
    }
    for (auto& ev : medium) ev.user_id = "fig-medium-dup";
    std::vector<InteractionEvent> high = zero;
    for (std::size_t i = 0; i < high.size(); ++i) {
      if (i > 0) high[i].task_repr = high[0].task_repr;
      high[i].user_id = "fig-high-dup";
    }

    const EngineConfig config = keyword_config();
    const std::int64_t start = base_period(config);
    const std::int64_t end = start + base.days - 1;
    const auto run = [&](const std::vector<InteractionEvent>& trace) {
      return run_user_trace(trace, config, base.leverage_level, start, end);
    };
    const auto zero_results = run(zero);
    const auto medium_results = run(medium);
    const auto high_results = run(high);

    std::vector<double> raw_per_day(static_cast<std::size_t>(base.days), 0.0);
    for (const InteractionEvent& ev : zero) {
      const auto day = static_cast<std::size_t>((ev.timestamp - kSimBaseEpoch) / 86400);
      raw_per_day[day] += static_cast<double>(ev.token_count);
    }

    SeriesTable table;
    table.family = "anti_gaming";
    table.columns = {"day",
                     "raw_tokens_cum",
                     "zero_dup_effective_cum",
                     "zero_dup_distinct_cum",
                     "medium_dup_effective_cum",
                     "medium_dup_distinct_cum",
                     "high_dup_effective_cum",
                     "high_dup_distinct_cum"};
    double raw_cum = 0.0;
    double zero_g = 0.0, zero_d = 0.0, med_g = 0.0, med_d = 0.0, high_g = 0.0, high_d = 0.0;
    for (std::size_t day = 0; day < static_cast<std::size_t>(base.days); ++day) {
      raw_cum += raw_per_day[day];
      zero_g += zero_results[day].effective_tokens;
      zero_d += zero_results[day].distinct_mass;
      med_g += medium_results[day].effective_tokens;
      med_d += medium_results[day].distinct_mass;
      high_g += high_results[day].effective_tokens;
      high_d += high_results[day].distinct_mass;
      table.rows.push_back(
          {static_cast<double>(day), raw_cum, zero_g, zero_d, med_g, med_d, high_g, high_d});
    }
    return table;
  }

  if (family == "temporal_response") {
    const EngineConfig config = keyword_config();
    EngineConfig no_grace = config;
    no_grace.grace_periods = 0;

    const std::int64_t start = base_period(config);
    const std::int64_t end = start + 45 - 1;
    const auto index_series = [&](const std::vector<InteractionEvent>& trace,
                                  const EngineConfig& cfg) {
      std::vector<double> series;
      for (const PeriodResult& r : run_user_trace(trace, cfg, 2, start, end)) {
        series.push_back(r.iiq_index);
      }
      return series;
    };

    const auto recurring = index_series(temporal_pattern_trace("recurring", 7101), config);
    const auto short_gap =
        index_series(temporal_pattern_trace("short_interruption", 7102), config);
    const auto long_trace = temporal_pattern_trace("long_interruption", 7103);
    const auto long_gap = index_series(long_trace, config);
    const auto weekly = index_series(temporal_pattern_trace("weekly_episodic", 7104), config);
    const auto long_gap_no_grace = index_series(long_trace, no_grace);

    SeriesTable table;
    table.family = "temporal_response";
    table.columns = {"day",
                     "recurring_index",
                     "short_interruption_index",
                     "long_interruption_index",
                     "weekly_episodic_index",
                     "long_interruption_no_grace_index"};
    for (std::size_t day = 0; day < recurring.size(); ++day) {
      table.rows.push_back({static_cast<double>(day), recurring[day], short_gap[day],
                            long_gap[day], weekly[day], long_gap_no_grace[day]});
    }
    return table;
  }

  throw Error("unknown figure family: " + std::string(family));
}

}  // namespace iiq
