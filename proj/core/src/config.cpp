#include "iiq/config.hpp"

#include <charconv>
#include <cstdint>
#include <sstream>
#include <vector>

#include "iiq/error.hpp"

namespace iiq {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

double parse_double_value(std::string_view key, std::string_view value, int line) {
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw ConfigError("invalid value for " + std::string(key) + " on line " +
                      std::to_string(line) + ": '" + std::string(value) + "'");
  }
  return out;
}

int parse_int_value(std::string_view key, std::string_view value, int line) {
  int out = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw ConfigError("invalid value for " + std::string(key) + " on line " +
                      std::to_string(line) + ": '" + std::string(value) + "'");
  }
  return out;
}

std::vector<double> parse_double_list(std::string_view key, std::string_view value, int line) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= value.size()) {
    std::size_t comma = value.find(',', start);
    std::string_view item =
        trim(value.substr(start, comma == std::string_view::npos ? comma : comma - start));
    if (item.empty()) {
      throw ConfigError("invalid value for " + std::string(key) + " on line " +
                        std::to_string(line) + ": empty list element");
    }
    out.push_back(parse_double_value(key, item, line));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

std::string format_double_shortest(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

EngineConfig load_config(std::string_view text) {
  EngineConfig config;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
    pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
    ++line_no;

    if (std::size_t hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;

    std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("malformed line " + std::to_string(line_no) + ": expected key = value");
    }
    std::string_view key = trim(line.substr(0, eq));
    std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError("malformed line " + std::to_string(line_no) + ": empty key");
    }

    if (key == "alpha_T_daily") config.alpha_T_daily = parse_double_value(key, value, line_no);
    else if (key == "alpha_F_daily") config.alpha_F_daily = parse_double_value(key, value, line_no);
    else if (key == "grace_periods") config.grace_periods = parse_int_value(key, value, line_no);
    else if (key == "lambda_daily") config.lambda_daily = parse_double_value(key, value, line_no);
    else if (key == "complexity_window") config.complexity_window = parse_int_value(key, value, line_no);
    else if (key == "omega_turns") config.omega_turns = parse_double_value(key, value, line_no);
    else if (key == "omega_hours") config.omega_hours = parse_double_value(key, value, line_no);
    else if (key == "gamma") config.gamma = parse_double_value(key, value, line_no);
    else if (key == "leverage") config.leverage.multipliers = parse_double_list(key, value, line_no);
    else if (key == "complexity") {
      auto values = parse_double_list(key, value, line_no);
      if (values.size() != 4) {
        throw ConfigError("complexity must list exactly 4 tier multipliers (line " +
                          std::to_string(line_no) + ")");
      }
      for (std::size_t i = 0; i < 4; ++i) config.complexity.multipliers[i] = values[i];
    }
    else if (key == "max_expected") config.max_expected = parse_double_value(key, value, line_no);
    else if (key == "k_hours_per_1k") config.k_hours_per_1k = parse_double_value(key, value, line_no);
    else if (key == "rho") config.rho = parse_double_value(key, value, line_no);
    else if (key == "wage_usd") config.wage_usd = parse_double_value(key, value, line_no);
    else if (key == "work_hours_per_day") config.work_hours_per_day = parse_double_value(key, value, line_no);
    else if (key == "period_hours") config.period_hours = parse_double_value(key, value, line_no);
    else if (key == "history_capacity") config.history_capacity = parse_int_value(key, value, line_no);
    else if (key == "similarity_method") config.similarity_method = similarity_method_from_string(value);
    else {
      throw ConfigError("unknown config key '" + std::string(key) + "' (line " +
                        std::to_string(line_no) + ")");
    }
  }
  config.validate();
  return config;
}

std::string render_config(const EngineConfig& c) {
  std::ostringstream out;
  auto emit = [&](std::string_view key, const std::string& value) {
    out << key << " = " << value << "\n";
  };
  auto emit_list = [&](std::string_view key, const auto& values) {
    std::string joined;
    for (double v : values) {
      if (!joined.empty()) joined += ",";
      joined += format_double_shortest(v);
    }
    emit(key, joined);
  };
  emit("alpha_T_daily", format_double_shortest(c.alpha_T_daily));
  emit("alpha_F_daily", format_double_shortest(c.alpha_F_daily));
  emit("grace_periods", std::to_string(c.grace_periods));
  emit("lambda_daily", format_double_shortest(c.lambda_daily));
  emit("complexity_window", std::to_string(c.complexity_window));
  emit("omega_turns", format_double_shortest(c.omega_turns));
  emit("omega_hours", format_double_shortest(c.omega_hours));
  emit("gamma", format_double_shortest(c.gamma));
  emit_list("leverage", c.leverage.multipliers);
  emit_list("complexity", c.complexity.multipliers);
  emit("max_expected", format_double_shortest(c.max_expected));
  emit("k_hours_per_1k", format_double_shortest(c.k_hours_per_1k));
  emit("rho", format_double_shortest(c.rho));
  emit("wage_usd", format_double_shortest(c.wage_usd));
  emit("work_hours_per_day", format_double_shortest(c.work_hours_per_day));
  emit("period_hours", format_double_shortest(c.period_hours));
  emit("history_capacity", std::to_string(c.history_capacity));
  emit("similarity_method", std::string(to_string(c.similarity_method)));
  return out.str();
}

std::string config_hash(const EngineConfig& config) {
  const std::string text = render_config(config);
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char byte : text) {
    h ^= byte;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace iiq
