#include "iiq/report.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "iiq/error.hpp"
#include "iiq/time.hpp"

namespace iiq {

namespace {

constexpr std::string_view kResultsHeader =
    "user_id,period_index,period_start_utc,T,F,R,V,C,A,G,D,U,iai,iiq_index,delta_iiq,"
    "est_hours_saved,est_usd";

std::string sig9(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", value);
  return buf;
}

std::string quote_csv(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) {
    return std::string(field);
  }
  std::string quoted = "\"";
  for (char c : field) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

// Splits one CSV line honoring double-quoted fields.
std::vector<std::string> split_csv_line(std::string_view line, int line_no) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          current += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        current += c;
      }
    } else if (c == '"') {
      if (!current.empty()) {
        throw ParseError("line " + std::to_string(line_no) + ": stray quote");
      }
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(current));
      current.clear();
    } else {
      current += c;
    }
    ++i;
  }
  if (quoted) {
    throw ParseError("line " + std::to_string(line_no) + ": unterminated quote");
  }
  fields.push_back(std::move(current));
  return fields;
}

double parse_double_field(const std::string& field, const char* name, int line_no) {
  if (field.empty()) {
    throw ParseError("line " + std::to_string(line_no) + ": empty " + name);
  }
  errno = 0;
  char* end = nullptr;
  const double value = std::strtod(field.c_str(), &end);
  if (errno != 0 || end != field.c_str() + field.size()) {
    throw ParseError("line " + std::to_string(line_no) + ": bad " + name + " '" + field + "'");
  }
  return value;
}

std::int64_t parse_int_field(const std::string& field, const char* name, int line_no) {
  const double value = parse_double_field(field, name, line_no);
  const auto integral = static_cast<std::int64_t>(value);
  if (static_cast<double>(integral) != value) {
    throw ParseError("line " + std::to_string(line_no) + ": " + name + " must be an integer");
  }
  return integral;
}

}  // namespace

std::string render_results_csv(std::span<const PeriodResult> results,
                               const EngineConfig& config) {
  std::string out(kResultsHeader);
  out += '\n';
  for (const PeriodResult& r : results) {
    out += quote_csv(r.user_id);
    out += ',';
    out += std::to_string(r.period_index);
    out += ',';
    out += format_iso8601_utc(period_start_seconds(r.period_index, config.period_hours));
    for (double v : {r.token_stock, r.frequency, r.recency, r.leverage, r.complexity,
                     r.autonomy, r.effective_tokens, r.distinct_mass, r.autonomy_mass, r.iai,
                     r.iiq_index}) {
      out += ',';
      out += sig9(v);
    }
    out += ',';
    if (r.delta_iiq.has_value()) out += sig9(*r.delta_iiq);
    out += ',';
    out += sig9(r.est_hours_saved);
    out += ',';
    out += sig9(r.est_usd);
    out += '\n';
  }
  return out;
}

std::vector<PeriodResult> parse_results_csv(std::string_view text, const EngineConfig& config) {
  std::vector<PeriodResult> results;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() : eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;

    if (line_no == 1) {
      if (line != kResultsHeader) {
        throw ParseError("line 1: unexpected results header");
      }
      continue;
    }
    const std::vector<std::string> fields = split_csv_line(line, line_no);
    if (fields.size() != 17) {
      throw ParseError("line " + std::to_string(line_no) + ": expected 17 columns, got " +
                       std::to_string(fields.size()));
    }
    PeriodResult r;
    r.user_id = fields[0];
    r.period_index = parse_int_field(fields[1], "period_index", line_no);
    const std::string expected_start =
        format_iso8601_utc(period_start_seconds(r.period_index, config.period_hours));
    if (fields[2] != expected_start) {
      throw ParseError("line " + std::to_string(line_no) +
                       ": period_start_utc does not match period_index");
    }
    r.token_stock = parse_double_field(fields[3], "T", line_no);
    r.frequency = parse_double_field(fields[4], "F", line_no);
    r.recency = parse_double_field(fields[5], "R", line_no);
    r.leverage = parse_double_field(fields[6], "V", line_no);
    r.complexity = parse_double_field(fields[7], "C", line_no);
    r.autonomy = parse_double_field(fields[8], "A", line_no);
    r.effective_tokens = parse_double_field(fields[9], "G", line_no);
    r.distinct_mass = parse_double_field(fields[10], "D", line_no);
    r.autonomy_mass = parse_double_field(fields[11], "U", line_no);
    r.iai = parse_double_field(fields[12], "iai", line_no);
    r.iiq_index = parse_double_field(fields[13], "iiq_index", line_no);
    if (!fields[14].empty()) {
      r.delta_iiq = parse_double_field(fields[14], "delta_iiq", line_no);
    }
    r.est_hours_saved = parse_double_field(fields[15], "est_hours_saved", line_no);
    r.est_usd = parse_double_field(fields[16], "est_usd", line_no);
    results.push_back(std::move(r));
  }
  if (line_no == 0) {
    throw ParseError("empty results file");
  }
  return results;
}

std::string render_summary_csv(std::span<const OrgSummary> summaries) {
  std::string out =
      "period_index,department,user_count,mean_index,median_index,active_user_share,"
      "top_decile_share,gini,total_hours_saved,total_usd\n";
  for (const OrgSummary& s : summaries) {
    out += std::to_string(s.period_index);
    out += ",(all),";
    out += std::to_string(s.user_count);
    for (double v : {s.mean_index, s.median_index, s.active_user_share, s.top_decile_share,
                     s.gini, s.total_hours_saved, s.total_usd}) {
      out += ',';
      out += sig9(v);
    }
    out += '\n';
    for (const DepartmentSummary& d : s.per_department) {
      out += std::to_string(s.period_index);
      out += ',';
      out += quote_csv(d.department);
      out += ',';
      out += std::to_string(d.user_count);
      out += ',';
      out += sig9(d.mean_index);
      out += ',';
      out += sig9(d.median_index);
      out += ",,,,,\n";  // org-only columns stay empty on department rows
    }
  }
  return out;
}

std::string render_series_csv(const SeriesTable& table) {
  std::string out;
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i > 0) out += ',';
    out += quote_csv(table.columns[i]);
  }
  out += '\n';
  for (const std::vector<double>& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out += ',';
      out += sig9(row[i]);
    }
    out += '\n';
  }
  return out;
}

std::string render_series_svg(const SeriesTable& table) {
  constexpr double kWidth = 960, kHeight = 480;
  constexpr double kLeft = 70, kRight = 930, kTop = 60, kBottom = 440;
  static const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                   "#9467bd", "#8c564b", "#17becf"};

  double x_min = 0.0, x_max = 1.0, y_min = 0.0, y_max = 1.0;
  bool first = true;
  for (const auto& row : table.rows) {
    if (row.empty()) continue;
    for (std::size_t c = 0; c < row.size(); ++c) {
      const double v = row[c];
      if (c == 0) {
        x_min = first ? v : std::min(x_min, v);
        x_max = first ? v : std::max(x_max, v);
      } else {
        y_min = first ? v : std::min(y_min, v);
        y_max = first ? v : std::max(y_max, v);
      }
    }
    first = false;
  }
  if (x_max == x_min) x_max = x_min + 1.0;
  if (y_max == y_min) y_max = y_min + 1.0;

  const auto x_of = [&](double v) {
    return kLeft + (v - x_min) / (x_max - x_min) * (kRight - kLeft);
  };
  const auto y_of = [&](double v) {
    return kBottom - (v - y_min) / (y_max - y_min) * (kBottom - kTop);
  };

  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " +
                    sig9(kWidth) + " " + sig9(kHeight) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"70\" y=\"28\" font-family=\"sans-serif\" font-size=\"16\">" + table.family +
         "</text>\n";
  svg += "<line x1=\"" + sig9(kLeft) + "\" y1=\"" + sig9(kBottom) + "\" x2=\"" + sig9(kRight) +
         "\" y2=\"" + sig9(kBottom) + "\" stroke=\"#333\"/>\n";
  svg += "<line x1=\"" + sig9(kLeft) + "\" y1=\"" + sig9(kTop) + "\" x2=\"" + sig9(kLeft) +
         "\" y2=\"" + sig9(kBottom) + "\" stroke=\"#333\"/>\n";
  svg += "<text x=\"" + sig9(kLeft) + "\" y=\"" + sig9(kBottom + 18) +
         "\" font-family=\"sans-serif\" font-size=\"11\">" + sig9(x_min) + "</text>\n";
  svg += "<text x=\"" + sig9(kRight - 20) + "\" y=\"" + sig9(kBottom + 18) +
         "\" font-family=\"sans-serif\" font-size=\"11\">" + sig9(x_max) + "</text>\n";
  svg += "<text x=\"6\" y=\"" + sig9(kBottom) + "\" font-family=\"sans-serif\" font-size=\"11\">" +
         sig9(y_min) + "</text>\n";
  svg += "<text x=\"6\" y=\"" + sig9(kTop + 4) + "\" font-family=\"sans-serif\" font-size=\"11\">" +
         sig9(y_max) + "</text>\n";

  const std::size_t series_count = table.columns.empty() ? 0 : table.columns.size() - 1;
  for (std::size_t s = 0; s < series_count; ++s) {
    const char* color = kPalette[s % (sizeof kPalette / sizeof kPalette[0])];
    std::string points;
    for (const auto& row : table.rows) {
      if (row.size() <= s + 1) continue;
      points += sig9(x_of(row[0]));
      points += ',';
      points += sig9(y_of(row[s + 1]));
      points += ' ';
    }
    svg += "<polyline fill=\"none\" stroke=\"";
    svg += color;
    svg += "\" stroke-width=\"1.5\" points=\"" + points + "\"/>\n";
    svg += "<text x=\"" + sig9(kLeft + 10 + 170 * static_cast<double>(s % 5)) + "\" y=\"" +
           sig9(44 + 14 * static_cast<double>(s / 5)) +
           "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"";
    svg += color;
    svg += "\">" + table.columns[s + 1] + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace iiq
