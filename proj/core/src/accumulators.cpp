#include "iiq/accumulators.hpp"

#include <cmath>

#include "iiq/error.hpp"

namespace iiq {

PeriodMasses period_masses(std::span<const WeightedEvent> events, const EngineConfig& config) {
  PeriodMasses masses;
  for (const WeightedEvent& we : events) {
    const InteractionEvent& event = *we.event;
    const double nu = we.nu;
    masses.effective_tokens += nu * static_cast<double>(event.token_count);
    masses.distinct_mass += nu;
    masses.autonomy_mass += nu * autonomy_mass(event, config.omega_turns, config.omega_hours);
    masses.weighted_tier_sum += nu * config.complexity.at(event.complexity_tier);
    ++masses.event_count;
  }
  return masses;
}

double update_token_stock(double token_stock_prev, double effective_tokens,
                          double alpha_periodic) {
  return token_stock_prev * (1.0 - alpha_periodic) + effective_tokens;
}

FrequencyUpdate update_frequency(double freq_raw_prev, double distinct_mass,
                                 double alpha_periodic) {
  FrequencyUpdate out;
  out.freq_raw = freq_raw_prev * (1.0 - alpha_periodic) + distinct_mass;
  out.frequency = 1.0 + std::log(1.0 + out.freq_raw);
  return out;
}

double recency_gate(int inactive_periods, int grace_periods, double lambda_periodic) {
  if (inactive_periods < 0) throw Error("inactive_periods must be >= 0");
  if (inactive_periods <= grace_periods) return 1.0;
  return std::exp(-lambda_periodic * static_cast<double>(inactive_periods - grace_periods));
}

double complexity_of_window(const std::deque<WindowEntry>& window) {
  double weighted = 0.0;
  double novelty = 0.0;
  for (const WindowEntry& entry : window) {
    weighted += entry.weighted_tier_sum;
    novelty += entry.novelty_sum;
  }
  if (novelty == 0.0) return 1.0;
  return weighted / novelty;
}

double update_complexity_window(std::deque<WindowEntry>& window, WindowEntry entry,
                                int window_length) {
  window.push_back(entry);
  while (window.size() > static_cast<std::size_t>(window_length)) window.pop_front();
  return complexity_of_window(window);
}

double autonomy_mass(const InteractionEvent& event, double omega_turns, double omega_hours) {
  return omega_turns * static_cast<double>(event.agent_turns) +
         omega_hours * event.active_run_hours;
}

double autonomy_multiplier(double autonomy_mass_total, double gamma) {
  return 1.0 + gamma * std::log(1.0 + autonomy_mass_total);
}

}  // namespace iiq
