#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "iiq/simulator.hpp"
#include "iiq/types.hpp"

namespace testutil {

// Relative tolerance with an absolute floor of 1e-9 for near-zero values.
inline bool close(double a, double b, double tol = 1e-9) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

inline iiq::InteractionEvent make_event(std::string user, std::int64_t ts,
                                        const std::string& prompt, std::int64_t tokens,
                                        int tier = 1, std::int64_t turns = 0,
                                        double hours = 0.0) {
  iiq::InteractionEvent ev;
  ev.user_id = std::move(user);
  ev.timestamp = ts;
  ev.task_repr = iiq::TaskRepresentation::from_raw(prompt);
  ev.token_count = tokens;
  ev.complexity_tier = tier;
  ev.agent_turns = turns;
  ev.active_run_hours = hours;
  return ev;
}

// Daily trace: one event per listed day offset, every prompt globally
// unique in keyword space (word index embedded), constant token count.
inline std::vector<iiq::InteractionEvent> daily_trace(const std::vector<int>& days,
                                                      std::int64_t tokens, int tier = 1) {
  std::vector<iiq::InteractionEvent> events;
  int counter = 0;
  for (int day : days) {
    std::string prompt;
    for (int w = 0; w < 5; ++w) {
      if (!prompt.empty()) prompt += ' ';
      prompt += "word" + std::to_string(100000 + counter++);
    }
    events.push_back(make_event("u1", iiq::kSimBaseEpoch + std::int64_t{86400} * day + 36000,
                                prompt, tokens, tier));
  }
  return events;
}

}  // namespace testutil
