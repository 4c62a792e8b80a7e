#include "iiq/types.hpp"

#include <cctype>
#include <cmath>

#include "iiq/error.hpp"

namespace iiq {

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

bool is_alnum(char c) {
  return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9');
}

}  // namespace

std::string normalize_text(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  bool pending_space = false;
  for (char c : raw) {
    if (is_space(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    out.push_back(c);
  }
  return out;
}

std::set<std::string> extract_keywords(std::string_view normalized) {
  std::set<std::string> keywords;
  std::string term;
  auto flush = [&] {
    if (term.size() >= 3) keywords.insert(term);
    term.clear();
  };
  for (char c : normalized) {
    if (is_alnum(c)) {
      term.push_back(c);
    } else {
      flush();
    }
  }
  flush();
  return keywords;
}

TaskRepresentation TaskRepresentation::from_raw(std::string_view raw_text) {
  TaskRepresentation repr;
  repr.normalized_text = normalize_text(raw_text);
  repr.keyword_set = extract_keywords(repr.normalized_text);
  if (repr.normalized_text.size() > kMaxComparableChars) {
    repr.normalized_text.resize(kMaxComparableChars);
  }
  return repr;
}

LeverageTable LeverageTable::defaults() {
  return LeverageTable{{1.0, 1.5, 2.5, 4.0, 7.0, 14.0, 25.0, 50.0}};
}

double LeverageTable::at(int level) const {
  if (!valid_level(level)) {
    throw Error("unknown leverage level " + std::to_string(level) + " (table has levels 1.." +
                std::to_string(max_level()) + ")");
  }
  return multipliers[static_cast<std::size_t>(level - 1)];
}

ComplexityTable ComplexityTable::defaults() {
  return ComplexityTable{{1.0, 2.0, 3.5, 5.0}};
}

double ComplexityTable::at(int tier) const {
  if (tier < 1 || tier > 4) {
    throw Error("unknown complexity tier " + std::to_string(tier) + " (expected 1..4)");
  }
  return multipliers[static_cast<std::size_t>(tier - 1)];
}

std::string_view to_string(SimilarityMethod method) {
  switch (method) {
    case SimilarityMethod::edit: return "edit";
    case SimilarityMethod::keyword: return "keyword";
    case SimilarityMethod::hybrid: return "hybrid";
  }
  return "hybrid";
}

SimilarityMethod similarity_method_from_string(std::string_view name) {
  if (name == "edit") return SimilarityMethod::edit;
  if (name == "keyword") return SimilarityMethod::keyword;
  if (name == "hybrid") return SimilarityMethod::hybrid;
  throw ConfigError("similarity_method must be one of edit, keyword, hybrid (got '" +
                    std::string(name) + "')");
}

void EngineConfig::validate() const {
  auto in_open_unit = [](double v) { return v > 0.0 && v < 1.0 && std::isfinite(v); };
  if (!in_open_unit(alpha_T_daily)) throw ConfigError("alpha_T_daily out of range (0,1)");
  if (!in_open_unit(alpha_F_daily)) throw ConfigError("alpha_F_daily out of range (0,1)");
  if (grace_periods < 0) throw ConfigError("grace_periods out of range (must be >= 0)");
  if (!(lambda_daily > 0.0) || !std::isfinite(lambda_daily))
    throw ConfigError("lambda_daily out of range (must be > 0)");
  if (complexity_window < 1) throw ConfigError("complexity_window out of range (must be >= 1)");
  if (!(omega_turns >= 0.0) || !std::isfinite(omega_turns))
    throw ConfigError("omega_turns out of range (must be >= 0)");
  if (!(omega_hours >= 0.0) || !std::isfinite(omega_hours))
    throw ConfigError("omega_hours out of range (must be >= 0)");
  if (!(gamma >= 0.0) || !std::isfinite(gamma))
    throw ConfigError("gamma out of range (must be >= 0)");
  if (leverage.multipliers.empty()) throw ConfigError("leverage table must not be empty");
  for (std::size_t i = 0; i < leverage.multipliers.size(); ++i) {
    double m = leverage.multipliers[i];
    if (!(m > 0.0) || !std::isfinite(m)) throw ConfigError("leverage multipliers must be positive");
    if (i > 0 && !(m > leverage.multipliers[i - 1]))
      throw ConfigError("leverage multipliers must be strictly increasing");
  }
  for (double m : complexity.multipliers) {
    if (!(m > 0.0) || !std::isfinite(m)) throw ConfigError("complexity multipliers must be positive");
  }
  if (!(max_expected > 1.0) || !std::isfinite(max_expected))
    throw ConfigError("max_expected out of range (must be > 1)");
  if (!(k_hours_per_1k >= 0.0) || !std::isfinite(k_hours_per_1k))
    throw ConfigError("k_hours_per_1k out of range (must be >= 0)");
  if (!(rho > 0.0 && rho <= 1.0)) throw ConfigError("rho out of range (0,1]");
  if (!(wage_usd >= 0.0) || !std::isfinite(wage_usd))
    throw ConfigError("wage_usd out of range (must be >= 0)");
  if (!(work_hours_per_day >= 0.0) || !std::isfinite(work_hours_per_day))
    throw ConfigError("work_hours_per_day out of range (must be >= 0)");
  static constexpr double kAllowedPeriods[] = {1, 2, 3, 4, 6, 8, 12, 24};
  bool period_ok = false;
  for (double p : kAllowedPeriods) period_ok = period_ok || period_hours == p;
  if (!period_ok) throw ConfigError("period_hours out of range (must be one of 1,2,3,4,6,8,12,24)");
  if (history_capacity < 1) throw ConfigError("history_capacity out of range (must be >= 1)");
}

double EngineConfig::alpha_T_periodic() const {
  return 1.0 - std::pow(1.0 - alpha_T_daily, period_hours / 24.0);
}

double EngineConfig::alpha_F_periodic() const {
  return 1.0 - std::pow(1.0 - alpha_F_daily, period_hours / 24.0);
}

double EngineConfig::lambda_periodic() const {
  return lambda_daily * (period_hours / 24.0);
}

double EngineConfig::work_hours_available() const {
  return work_hours_per_day * (period_hours / 24.0);
}

}  // namespace iiq
