#include "iiq/engine.hpp"

#include <algorithm>
#include <cmath>

#include "iiq/accumulators.hpp"
#include "iiq/error.hpp"
#include "iiq/interpretation.hpp"
#include "iiq/novelty.hpp"
#include "iiq/time.hpp"

namespace iiq {

double convert_decay(double alpha_daily, double period_hours) {
  if (period_hours == 24.0) return alpha_daily;  // keep the daily grid exact
  return 1.0 - std::pow(1.0 - alpha_daily, period_hours / 24.0);
}

double convert_lambda(double lambda_daily, double period_hours) {
  return lambda_daily * (period_hours / 24.0);
}

UserState init_state(int leverage_level, const EngineConfig& config) {
  config.leverage.at(leverage_level);  // throws on unknown level
  UserState state;
  state.leverage_level = leverage_level;
  return state;
}

PeriodResult process_period(UserState& state, std::int64_t period_index,
                            std::span<const InteractionEvent> events,
                            const EngineConfig& config) {
  if (state.last_period_index && period_index != *state.last_period_index + 1) {
    throw Error("out-of-order period: expected " + std::to_string(*state.last_period_index + 1) +
                ", got " + std::to_string(period_index));
  }
  for (std::size_t i = 0; i < events.size(); ++i) {
    if (period_index_of(events[i].timestamp, config.period_hours) != period_index) {
      throw Error("event timestamp " + format_iso8601_utc(events[i].timestamp) +
                  " outside period " + std::to_string(period_index));
    }
    if (i > 0 && events[i].timestamp < events[i - 1].timestamp) {
      throw Error("events not sorted by timestamp within period " +
                  std::to_string(period_index));
    }
  }

  // Novelty in timestamp order; each event sees the earlier events of the
  // same period in its history.
  std::vector<WeightedEvent> weighted;
  weighted.reserve(events.size());
  for (const InteractionEvent& event : events) {
    const double nu = novelty_weight(event.task_repr, state.history, config.similarity_method);
    weighted.push_back({&event, nu});
    push_history(state.history, event.task_repr,
                 static_cast<std::size_t>(config.history_capacity));
  }
  const PeriodMasses masses = period_masses(weighted, config);

  state.token_stock =
      update_token_stock(state.token_stock, masses.effective_tokens, config.alpha_T_periodic());
  const FrequencyUpdate freq =
      update_frequency(state.freq_raw, masses.distinct_mass, config.alpha_F_periodic());
  state.freq_raw = freq.freq_raw;

  state.inactive_streak = events.empty() ? state.inactive_streak + 1 : 0;
  const double recency =
      recency_gate(state.inactive_streak, config.grace_periods, config.lambda_periodic());

  const double complexity = update_complexity_window(
      state.complexity_window, WindowEntry{masses.weighted_tier_sum, masses.distinct_mass},
      config.complexity_window);

  const double autonomy = autonomy_multiplier(masses.autonomy_mass, config.gamma);
  const double leverage = config.leverage.at(state.leverage_level);

  PeriodResult result;
  result.user_id = events.empty() ? std::string{} : events.front().user_id;
  result.period_index = period_index;
  result.token_stock = state.token_stock;
  result.frequency = freq.frequency;
  result.recency = recency;
  result.leverage = leverage;
  result.complexity = complexity;
  result.autonomy = autonomy;
  result.effective_tokens = masses.effective_tokens;
  result.distinct_mass = masses.distinct_mass;
  result.autonomy_mass = masses.autonomy_mass;
  result.iai = result.token_stock * result.frequency * result.recency * result.leverage *
               result.complexity * result.autonomy;
  result.iiq_index = iiq_index(result.iai, config.max_expected);
  result.delta_iiq = delta_iiq(result.iiq_index, state.previous_index);

  InterpretationInputs inputs;
  inputs.effective_tokens = masses.effective_tokens;
  inputs.complexity = complexity;
  inputs.autonomy = autonomy;
  inputs.leverage = leverage;
  inputs.work_hours_available = config.work_hours_available();
  inputs.k_hours_per_1k = config.k_hours_per_1k;
  inputs.rho = config.rho;
  inputs.wage_usd = config.wage_usd;
  result.est_hours_saved = hours_saved(inputs);
  result.est_usd = usd_impact(result.est_hours_saved, config.wage_usd, leverage);

  state.previous_index = result.iiq_index;
  state.last_delta = result.delta_iiq;
  state.last_period_index = period_index;
  return result;
}

double micro_iai(const InteractionEvent& event, double nu, const EngineConfig& config,
                 int leverage_level) {
  const double leverage = config.leverage.at(leverage_level);
  const double tier_multiplier = config.complexity.at(event.complexity_tier);
  const double mass = autonomy_mass(event, config.omega_turns, config.omega_hours);
  const double interaction_autonomy = autonomy_multiplier(mass, config.gamma);
  return nu * static_cast<double>(event.token_count) * leverage * tier_multiplier *
         interaction_autonomy;
}

std::optional<double> delta_iiq(double current_index, std::optional<double> previous_index) {
  if (!previous_index) return std::nullopt;
  return current_index - *previous_index;
}

std::vector<PeriodResult> run_user_trace(UserState& state,
                                         std::span<const InteractionEvent> events,
                                         const EngineConfig& config,
                                         std::optional<std::int64_t> start_period,
                                         std::optional<std::int64_t> end_period) {
  for (std::size_t i = 1; i < events.size(); ++i) {
    if (events[i].timestamp < events[i - 1].timestamp) {
      throw Error("trace events not sorted by timestamp");
    }
  }
  std::int64_t start, end;
  if (!events.empty()) {
    start = start_period.value_or(period_index_of(events.front().timestamp, config.period_hours));
    end = end_period.value_or(period_index_of(events.back().timestamp, config.period_hours));
  } else if (start_period && end_period) {
    start = *start_period;
    end = *end_period;
  } else {
    return {};
  }
  if (state.last_period_index) start = *state.last_period_index + 1;

  std::vector<PeriodResult> results;
  std::size_t cursor = 0;
  std::string user_id = events.empty() ? std::string{} : events.front().user_id;
  for (std::int64_t period = start; period <= end; ++period) {
    std::size_t first = cursor;
    while (cursor < events.size() &&
           period_index_of(events[cursor].timestamp, config.period_hours) == period) {
      ++cursor;
    }
    PeriodResult result =
        process_period(state, period, events.subspan(first, cursor - first), config);
    if (result.user_id.empty()) result.user_id = user_id;
    results.push_back(std::move(result));
  }
  if (cursor != events.size()) {
    throw Error("trace events fall outside the period grid");
  }
  return results;
}

std::vector<PeriodResult> run_user_trace(std::span<const InteractionEvent> events,
                                         const EngineConfig& config, int leverage_level,
                                         std::optional<std::int64_t> start_period,
                                         std::optional<std::int64_t> end_period) {
  UserState state = init_state(leverage_level, config);
  return run_user_trace(state, events, config, start_period, end_period);
}

}  // namespace iiq
