#pragma once

#include <deque>
#include <span>
#include <utility>
#include <vector>

#include "iiq/types.hpp"

namespace iiq {

// One event paired with its already-computed novelty weight. Order matters:
// weights must have been computed in timestamp order.
struct WeightedEvent {
  const InteractionEvent* event;
  double nu;
};

// Sums the novelty-weighted per-period masses: effective tokens, distinct
// mass, autonomy mass and the weighted tier-multiplier sum.
PeriodMasses period_masses(std::span<const WeightedEvent> events, const EngineConfig& config);

// T' = T * (1 - alpha) + G
double update_token_stock(double token_stock_prev, double effective_tokens,
                          double alpha_periodic);

struct FrequencyUpdate {
  double freq_raw;
  double frequency;  // 1 + ln(1 + freq_raw)
};

// F_raw' = F_raw * (1 - alpha) + D;  F = 1 + ln(1 + F_raw')
FrequencyUpdate update_frequency(double freq_raw_prev, double distinct_mass,
                                 double alpha_periodic);

// 1 within the grace threshold, exponential decay beyond it.
double recency_gate(int inactive_periods, int grace_periods, double lambda_periodic);

// Appends the period entry (evicting beyond the window length) and returns
// the novelty-weighted tier average, or 1.0 when the window holds no
// novelty mass.
double update_complexity_window(std::deque<WindowEntry>& window, WindowEntry entry,
                                int window_length);

// Reads a window without mutating it.
double complexity_of_window(const std::deque<WindowEntry>& window);

// u = omega_turns * agent_turns + omega_hours * active_run_hours
double autonomy_mass(const InteractionEvent& event, double omega_turns, double omega_hours);

// A = 1 + gamma * ln(1 + U)
double autonomy_multiplier(double autonomy_mass_total, double gamma);

}  // namespace iiq
