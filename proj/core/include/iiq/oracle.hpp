#pragma once

#include <optional>
#include <span>
#include <vector>

#include "iiq/types.hpp"

namespace iiq {

// Brute-force reference evaluator. Recomputes every quantity from the full
// event list each period: token stock and frequency from closed-form
// geometric sums, complexity from the literal double sum over raw window
// events, novelty from full-history max scans. Shares only the domain types
// and the similarity scorers with the streaming engine; none of the
// accumulator code. Not performance-tuned; refuses traces beyond 10,000
// events.
std::vector<PeriodResult> oracle_evaluate(std::span<const InteractionEvent> trace,
                                          const EngineConfig& config, int leverage_level,
                                          std::optional<std::int64_t> start_period = {},
                                          std::optional<std::int64_t> end_period = {});

}  // namespace iiq
