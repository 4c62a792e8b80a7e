#include "iiq/interpretation.hpp"

#include <algorithm>
#include <cmath>

namespace iiq {

double iiq_index(double iai, double max_expected) {
  const double scaled = std::log10(iai + 1.0) / std::log10(max_expected) * 1000.0;
  return std::min(1000.0, std::max(0.0, scaled));
}

double hours_saved(const InterpretationInputs& in) {
  const double cap = in.rho * in.work_hours_available;
  const double unbounded =
      in.effective_tokens / 1000.0 * in.k_hours_per_1k * in.complexity * in.autonomy;
  return std::min(cap, unbounded);
}

double usd_impact(double hours, double wage_usd, double leverage) {
  return hours * (wage_usd * leverage);
}

}  // namespace iiq
