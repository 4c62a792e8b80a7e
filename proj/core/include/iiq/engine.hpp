#pragma once

#include <optional>
#include <span>
#include <vector>

#include "iiq/types.hpp"

namespace iiq {

// alpha_periodic = 1 - (1 - alpha_daily)^(P/24)
double convert_decay(double alpha_daily, double period_hours);

// lambda_periodic = lambda_daily * (P/24)
double convert_lambda(double lambda_daily, double period_hours);

// Fresh state with the documented base cases: zero stocks, neutral gates,
// empty windows and history.
UserState init_state(int leverage_level, const EngineConfig& config);

// Advances one user by exactly one period. `events` may be empty (inactive
// period) and must all fall inside `period_index`, sorted by timestamp.
// Periods must be processed consecutively; the caller materializes empty
// periods for gaps. Throws Error on out-of-order periods or stray events.
PeriodResult process_period(UserState& state, std::int64_t period_index,
                            std::span<const InteractionEvent> events,
                            const EngineConfig& config);

// Stateless single-interaction approximation: nu * t * V * c * a.
double micro_iai(const InteractionEvent& event, double nu, const EngineConfig& config,
                 int leverage_level);

// current - previous; empty when there is no previous index yet.
std::optional<double> delta_iiq(double current_index, std::optional<double> previous_index);

// Convenience driver: runs one user's full trace through process_period,
// materializing empty periods. The period grid defaults to the span of the
// events and can be widened explicitly.
std::vector<PeriodResult> run_user_trace(std::span<const InteractionEvent> events,
                                         const EngineConfig& config, int leverage_level,
                                         std::optional<std::int64_t> start_period = {},
                                         std::optional<std::int64_t> end_period = {});

// Same as above but threads an existing state through the run.
std::vector<PeriodResult> run_user_trace(UserState& state,
                                         std::span<const InteractionEvent> events,
                                         const EngineConfig& config,
                                         std::optional<std::int64_t> start_period = {},
                                         std::optional<std::int64_t> end_period = {});

}  // namespace iiq
