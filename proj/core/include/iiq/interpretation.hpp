#pragma once

#include "iiq/types.hpp"

namespace iiq {

// Inputs to the bounded hours-saved estimate. All estimates downstream of
// these are interpretive, not observed; reports label them "estimated".
struct InterpretationInputs {
  double effective_tokens = 0.0;       // G, current period only
  double complexity = 1.0;             // C
  double autonomy = 1.0;               // A
  double leverage = 1.0;               // V
  double work_hours_available = 0.0;   // plausible work hours in the period
  double k_hours_per_1k = 0.0;
  double rho = 1.0;
  double wage_usd = 0.0;
};

// min(1000, max(0, log10(iai + 1) / log10(max_expected) * 1000))
double iiq_index(double iai, double max_expected);

// min(rho * work_hours_available, (G / 1000) * k * C * A)
double hours_saved(const InterpretationInputs& inputs);

// hours * (wage * leverage)
double usd_impact(double hours, double wage_usd, double leverage);

}  // namespace iiq
