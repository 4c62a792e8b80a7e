#include <doctest.h>

#include <cmath>
#include <deque>
#include <vector>

#include "iiq/accumulators.hpp"
#include "iiq/engine.hpp"
#include "test_util.hpp"

using namespace iiq;
using testutil::close;
using testutil::make_event;

TEST_CASE("period masses from weighted events") {
  const EngineConfig config;

  SUBCASE("single fully-novel event") {
    const InteractionEvent ev = make_event("u1", 0, "draft report", 1000, 2);
    const std::vector<WeightedEvent> weighted = {{&ev, 1.0}};
    const PeriodMasses m = period_masses(weighted, config);
    CHECK(m.effective_tokens == 1000.0);
    CHECK(m.distinct_mass == 1.0);
    CHECK(m.autonomy_mass == 0.0);
    CHECK(m.weighted_tier_sum == 2.0);
    CHECK(m.event_count == 1);
  }

  SUBCASE("exact duplicate contributes nothing") {
    const InteractionEvent a = make_event("u1", 0, "same", 500);
    const InteractionEvent b = make_event("u1", 1, "same", 500);
    const std::vector<WeightedEvent> weighted = {{&a, 1.0}, {&b, 0.0}};
    const PeriodMasses m = period_masses(weighted, config);
    CHECK(m.effective_tokens == 500.0);
    CHECK(m.distinct_mass == 1.0);
    CHECK(m.event_count == 2);
  }

  SUBCASE("autonomy mass is novelty weighted") {
    const InteractionEvent ev = make_event("u1", 0, "agentic", 100, 3, 10, 2.0);
    const std::vector<WeightedEvent> weighted = {{&ev, 0.5}};
    const PeriodMasses m = period_masses(weighted, config);
    CHECK(close(m.autonomy_mass, 0.5 * (0.18 * 10 + 1.6 * 2.0)));
    CHECK(close(m.weighted_tier_sum, 0.5 * 3.5));
    CHECK(m.effective_tokens == 50.0);
  }

  SUBCASE("empty span") {
    const PeriodMasses m = period_masses({}, config);
    CHECK(m.effective_tokens == 0.0);
    CHECK(m.distinct_mass == 0.0);
    CHECK(m.autonomy_mass == 0.0);
    CHECK(m.weighted_tier_sum == 0.0);
    CHECK(m.event_count == 0);
  }
}

TEST_CASE("token stock recurrence") {
  CHECK(update_token_stock(0.0, 1000.0, 0.05) == 1000.0);
  CHECK(update_token_stock(1000.0, 0.0, 0.05) == 950.0);
  CHECK(close(update_token_stock(1000.0, 500.0, 0.05), 1450.0));

  double stock = 1000.0;
  for (int i = 0; i < 14; ++i) stock = update_token_stock(stock, 0.0, 0.05);
  CHECK(close(stock, 1000.0 * 0.48767497911552954));

  // Four sub-daily decay steps compose to exactly one daily step.
  const double alpha_6h = convert_decay(0.05, 6.0);
  double sub = 1000.0;
  for (int i = 0; i < 4; ++i) sub = update_token_stock(sub, 0.0, alpha_6h);
  CHECK(close(sub, 950.0, 1e-12));
}

TEST_CASE("frequency recurrence") {
  const FrequencyUpdate first = update_frequency(0.0, 1.0, 0.05);
  CHECK(first.freq_raw == 1.0);
  CHECK(close(first.frequency, 1.6931471805599454));

  const FrequencyUpdate big = update_frequency(0.0, 9.5, 0.05);
  CHECK(close(big.frequency, 3.3513752571634776));  // 1 + ln(10.5)

  const FrequencyUpdate decayed = update_frequency(1.0, 0.0, 0.05);
  CHECK(close(decayed.freq_raw, 0.95));

  // F >= 1 for any reachable raw value.
  for (double raw : {0.0, 0.001, 1.0, 250.0}) {
    CHECK(update_frequency(raw, 0.0, 0.05).frequency >= 1.0);
    CHECK(update_frequency(raw, 3.0, 0.05).frequency >= 1.0);
  }
}

TEST_CASE("recency gate") {
  CHECK(recency_gate(0, 3, 0.30) == 1.0);
  CHECK(recency_gate(1, 3, 0.30) == 1.0);
  CHECK(recency_gate(3, 3, 0.30) == 1.0);
  CHECK(close(recency_gate(4, 3, 0.30), 0.7408182206817179));  // e^-0.3
  CHECK(close(recency_gate(5, 3, 0.30), 0.5488116360940264));  // e^-0.6
  CHECK(close(recency_gate(10, 3, 0.30), std::exp(-0.30 * 7)));

  // No grace: any inactivity decays immediately.
  CHECK(recency_gate(0, 0, 0.30) == 1.0);
  CHECK(close(recency_gate(1, 0, 0.30), std::exp(-0.30)));

  // Gate never exceeds 1 and decreases with the streak.
  double prev = 1.0;
  for (int streak = 0; streak <= 12; ++streak) {
    const double r = recency_gate(streak, 3, 0.30);
    CHECK(r <= 1.0);
    CHECK(r > 0.0);
    CHECK(r <= prev);
    prev = r;
  }
}

TEST_CASE("complexity window") {
  const int W = 14;

  SUBCASE("single period") {
    std::deque<WindowEntry> window;
    CHECK(update_complexity_window(window, {2.0, 1.0}, W) == 2.0);
    CHECK(window.size() == 1);
  }

  SUBCASE("weighted average across periods") {
    std::deque<WindowEntry> window;
    update_complexity_window(window, {5.0, 1.0}, W);
    CHECK(update_complexity_window(window, {1.0, 1.0}, W) == 3.0);
  }

  SUBCASE("all-idle window reads as neutral") {
    std::deque<WindowEntry> window;
    CHECK(update_complexity_window(window, {0.0, 0.0}, W) == 1.0);
    update_complexity_window(window, {0.0, 0.0}, W);
    CHECK(complexity_of_window(window) == 1.0);
  }

  SUBCASE("empty periods dilute but do not reset") {
    std::deque<WindowEntry> window;
    update_complexity_window(window, {5.0, 1.0}, W);
    CHECK(update_complexity_window(window, {0.0, 0.0}, W) == 5.0);
    CHECK(window.size() == 2);
  }

  SUBCASE("entries roll off after the window length") {
    std::deque<WindowEntry> window;
    update_complexity_window(window, {5.0, 1.0}, W);
    double last = 0.0;
    for (int i = 0; i < W; ++i) last = update_complexity_window(window, {1.0, 1.0}, W);
    CHECK(window.size() == static_cast<std::size_t>(W));
    CHECK(last == 1.0);  // the 5.0 entry has been evicted
  }

  SUBCASE("average stays within the tier multiplier range") {
    const EngineConfig config;
    std::deque<WindowEntry> window;
    Rng rng(7);
    for (int i = 0; i < 40; ++i) {
      const double nu = rng.next_unit();
      const int tier = static_cast<int>(rng.next_int(1, 4));
      const double c =
          update_complexity_window(window, {nu * config.complexity.at(tier), nu}, W);
      CHECK(c >= config.complexity.at(1) - 1e-12);
      CHECK(c <= config.complexity.at(4) + 1e-12);
    }
  }
}

TEST_CASE("autonomy mass and multiplier") {
  const InteractionEvent agentic = make_event("u1", 0, "x", 100, 1, 10, 2.0);
  CHECK(close(autonomy_mass(agentic, 0.18, 1.6), 5.0));

  const InteractionEvent long_run = make_event("u1", 0, "x", 100, 1, 0, 20.0);
  CHECK(close(autonomy_mass(long_run, 0.18, 1.6), 32.0));

  const InteractionEvent chat = make_event("u1", 0, "x", 100, 1, 0, 0.0);
  CHECK(autonomy_mass(chat, 0.18, 1.6) == 0.0);

  CHECK(autonomy_multiplier(0.0, 0.18) == 1.0);
  CHECK(close(autonomy_multiplier(5.0, 0.18), 1.32251670446105));  // 1 + 0.18 ln 6

  // Sub-linear growth: equal mass increments buy less and less.
  const double a0 = autonomy_multiplier(0.0, 0.18);
  const double a5 = autonomy_multiplier(5.0, 0.18);
  const double a10 = autonomy_multiplier(10.0, 0.18);
  CHECK(a10 - a5 < a5 - a0);
  CHECK(a0 == 1.0);
  CHECK(a5 > a0);
  CHECK(a10 > a5);
}
