#include "iiq/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "iiq/error.hpp"
#include "iiq/novelty.hpp"
#include "iiq/time.hpp"

namespace iiq {

namespace {

constexpr std::size_t kOracleEventCap = 10000;

struct OracleEvent {
  const InteractionEvent* event = nullptr;
  std::int64_t period = 0;
  double nu = 0.0;
};

}  // namespace

std::vector<PeriodResult> oracle_evaluate(std::span<const InteractionEvent> trace,
                                          const EngineConfig& config, int leverage_level,
                                          std::optional<std::int64_t> start_period,
                                          std::optional<std::int64_t> end_period) {
  config.validate();
  const double leverage = config.leverage.at(leverage_level);
  if (trace.size() > kOracleEventCap) {
    throw Error("oracle refuses traces beyond 10,000 events");
  }
  for (std::size_t i = 1; i < trace.size(); ++i) {
    if (trace[i].timestamp < trace[i - 1].timestamp) {
      throw Error("events not sorted by timestamp");
    }
  }

  std::vector<OracleEvent> events;
  events.reserve(trace.size());
  for (const InteractionEvent& ev : trace) {
    events.push_back({&ev, period_index_of(ev.timestamp, config.period_hours), 0.0});
  }

  // Novelty by full scan over the trailing history_capacity prior events.
  const auto method = config.similarity_method;
  const auto capacity = static_cast<std::size_t>(config.history_capacity);
  for (std::size_t i = 0; i < events.size(); ++i) {
    const std::size_t lo = i > capacity ? i - capacity : 0;
    double max_sim = 0.0;
    bool any = false;
    for (std::size_t j = lo; j < i; ++j) {
      any = true;
      max_sim = std::max(max_sim,
                         similarity(events[i].event->task_repr, events[j].event->task_repr, method));
    }
    events[i].nu = any ? std::max(0.0, 1.0 - max_sim) : 1.0;
  }

  if (events.empty() && !start_period.has_value()) {
    return {};
  }
  const std::int64_t start = start_period.value_or(events.empty() ? 0 : events.front().period);
  const std::int64_t end = end_period.value_or(events.empty() ? start : events.back().period);
  if (end < start) {
    throw Error("evaluation range is empty");
  }
  for (const OracleEvent& oe : events) {
    if (oe.period < start || oe.period > end) {
      throw Error("trace events fall outside the period grid");
    }
  }

  const double alpha_t = config.alpha_T_periodic();
  const double alpha_f = config.alpha_F_periodic();
  const double lambda = config.lambda_periodic();
  const double work_hours = config.work_hours_available();
  const std::string user_id = events.empty() ? std::string{} : events.front().event->user_id;

  // Per-period masses, recomputed literally from the event list.
  const std::size_t n_periods = static_cast<std::size_t>(end - start + 1);
  std::vector<double> g(n_periods, 0.0);   // sum nu * tokens
  std::vector<double> d(n_periods, 0.0);   // sum nu
  std::vector<double> u(n_periods, 0.0);   // sum nu * unassisted-effort proxy
  std::vector<double> wc(n_periods, 0.0);  // sum nu * complexity multiplier
  std::vector<bool> active(n_periods, false);
  for (const OracleEvent& oe : events) {
    const std::size_t p = static_cast<std::size_t>(oe.period - start);
    const InteractionEvent& ev = *oe.event;
    g[p] += oe.nu * static_cast<double>(ev.token_count);
    d[p] += oe.nu;
    const double effort = config.omega_turns * static_cast<double>(ev.agent_turns) +
                          config.omega_hours * ev.active_run_hours;
    u[p] += oe.nu * effort;
    wc[p] += oe.nu * config.complexity.at(ev.complexity_tier);
    active[p] = true;
  }

  std::vector<PeriodResult> results;
  results.reserve(n_periods);
  std::optional<double> previous_index;
  for (std::size_t p = 0; p < n_periods; ++p) {
    // Token stock and frequency as explicit geometric sums over all periods
    // so far, oldest first.
    double token_stock = 0.0;
    double freq_raw = 0.0;
    for (std::size_t q = 0; q <= p; ++q) {
      const double decay_t = std::pow(1.0 - alpha_t, static_cast<double>(p - q));
      const double decay_f = std::pow(1.0 - alpha_f, static_cast<double>(p - q));
      token_stock += g[q] * decay_t;
      freq_raw += d[q] * decay_f;
    }
    const double frequency = 1.0 + std::log(1.0 + freq_raw);

    // Inactivity streak: consecutive empty periods counting this one.
    std::int64_t streak = 0;
    for (std::size_t q = p + 1; q-- > 0;) {
      if (active[q]) break;
      ++streak;
    }
    const double recency =
        streak <= config.grace_periods
            ? 1.0
            : std::exp(-lambda * static_cast<double>(streak - config.grace_periods));

    // Complexity over the raw window events: literal double sum across the
    // last complexity_window periods.
    const auto window = static_cast<std::size_t>(config.complexity_window);
    const std::size_t w_lo = p + 1 > window ? p + 1 - window : 0;
    double num = 0.0;
    double den = 0.0;
    for (std::size_t q = w_lo; q <= p; ++q) {
      num += wc[q];
      den += d[q];
    }
    const double complexity = den == 0.0 ? 1.0 : num / den;

    const double autonomy = 1.0 + config.gamma * std::log(1.0 + u[p]);

    const double iai = token_stock * frequency * recency * leverage * complexity * autonomy;
    double index = std::log10(iai + 1.0) / std::log10(config.max_expected) * 1000.0;
    index = std::min(1000.0, std::max(0.0, index));

    double hours = (g[p] / 1000.0) * config.k_hours_per_1k * complexity * autonomy;
    hours = std::min(config.rho * work_hours, hours);
    const double usd = hours * (config.wage_usd * leverage);

    PeriodResult r;
    r.user_id = user_id;
    r.period_index = start + static_cast<std::int64_t>(p);
    r.token_stock = token_stock;
    r.frequency = frequency;
    r.recency = recency;
    r.leverage = leverage;
    r.complexity = complexity;
    r.autonomy = autonomy;
    r.effective_tokens = g[p];
    r.distinct_mass = d[p];
    r.autonomy_mass = u[p];
    r.iai = iai;
    r.iiq_index = index;
    if (previous_index.has_value()) {
      r.delta_iiq = index - *previous_index;
    }
    r.est_hours_saved = hours;
    r.est_usd = usd;
    results.push_back(std::move(r));
    previous_index = index;
  }
  return results;
}

}  // namespace iiq
