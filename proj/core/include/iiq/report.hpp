#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "iiq/aggregation.hpp"
#include "iiq/simulator.hpp"
#include "iiq/types.hpp"

namespace iiq {

// Per-user per-period results with the full factor decomposition. Columns:
// user_id, period_index, period_start_utc, T, F, R, V, C, A, G, D, U, iai,
// iiq_index, delta_iiq, est_hours_saved, est_usd. LF line endings, 9
// significant digits, empty delta on a user's first row.
std::string render_results_csv(std::span<const PeriodResult> results,
                               const EngineConfig& config);

// Inverse of render_results_csv (the period_start_utc column is derived and
// checked against period_index). Throws ParseError with a line number.
std::vector<PeriodResult> parse_results_csv(std::string_view text,
                                            const EngineConfig& config);

// One "(all)" row per period followed by one row per department; the
// org-only columns are empty on department rows.
std::string render_summary_csv(std::span<const OrgSummary> summaries);

std::string render_series_csv(const SeriesTable& table);

// Minimal self-contained line chart, one polyline per series.
std::string render_series_svg(const SeriesTable& table);

}  // namespace iiq
