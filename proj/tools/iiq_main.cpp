#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "iiq/aggregation.hpp"
#include "iiq/config.hpp"
#include "iiq/engine.hpp"
#include "iiq/error.hpp"
#include "iiq/event_log.hpp"
#include "iiq/ingest.hpp"
#include "iiq/oracle.hpp"
#include "iiq/report.hpp"
#include "iiq/simulator.hpp"
#include "iiq/snapshot.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw iiq::Error("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw iiq::Error("cannot write file: " + path);
  out << content;
  if (!out.flush()) throw iiq::Error("failed writing file: " + path);
}

std::string sig9(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", value);
  return buf;
}

std::string sig12(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

int run_ingest(const std::string& events_path, const std::string& config_path,
               const std::string& state_path, const std::string& out_dir) {
  const iiq::EngineConfig config = iiq::load_config(read_file(config_path));
  const std::string hash = iiq::config_hash(config);

  std::map<std::string, iiq::UserRecord> users;
  if (!state_path.empty()) {
    const iiq::StateSnapshot snapshot = iiq::load_snapshot(state_path);
    if (snapshot.config_hash != hash) {
      throw iiq::Error("snapshot config hash " + snapshot.config_hash +
                       " does not match config " + hash);
    }
    users = snapshot.users;
  }

  const iiq::EventLogParse parse = iiq::parse_event_log(read_file(events_path));
  for (const std::string& warning : parse.warnings) {
    std::cerr << "warning: " << warning << '\n';
  }

  iiq::IngestOutcome outcome = iiq::ingest_events(parse.records, std::move(users), config);

  std::filesystem::create_directories(out_dir);
  const std::string results_path = out_dir + "/results.csv";
  const std::string snapshot_path = out_dir + "/snapshot.json";
  write_file(results_path, iiq::render_results_csv(outcome.results, config));

  iiq::StateSnapshot snapshot;
  snapshot.config_hash = hash;
  snapshot.config_text = iiq::render_config(config);
  snapshot.users = std::move(outcome.users);
  iiq::save_snapshot(snapshot_path, snapshot);

  std::cout << "ingested " << parse.records.size() << " events; wrote " << results_path << " ("
            << outcome.results.size() << " rows) and " << snapshot_path << " ("
            << snapshot.users.size() << " users)\n";
  return 0;
}

int run_score(const std::string& state_path) {
  const iiq::StateSnapshot snapshot = iiq::load_snapshot(state_path);
  for (const auto& [user_id, record] : snapshot.users) {
    if (!record.state.previous_index.has_value()) continue;
    std::cout << user_id << '\t' << sig9(*record.state.previous_index) << '\t'
              << (record.state.last_delta.has_value() ? sig9(*record.state.last_delta)
                                                      : std::string("n/a"))
              << '\n';
  }
  return 0;
}

int run_aggregate(const std::string& results_path, const std::string& states_path,
                  const std::string& out_path) {
  const iiq::StateSnapshot snapshot = iiq::load_snapshot(states_path);
  const iiq::EngineConfig config = iiq::load_config(snapshot.config_text);
  const std::vector<iiq::PeriodResult> rows =
      iiq::parse_results_csv(read_file(results_path), config);

  std::map<std::int64_t, std::vector<iiq::PeriodResult>> by_period;
  for (const iiq::PeriodResult& r : rows) by_period[r.period_index].push_back(r);

  const double weekly_cap = config.rho * config.work_hours_per_day * 5.0;
  struct WeekCredit {
    std::int64_t week = 0;
    double hours = 0.0;
  };
  std::map<std::string, WeekCredit> credits;

  std::vector<iiq::OrgSummary> summaries;
  for (const auto& [period, period_rows] : by_period) {
    const std::int64_t week = iiq::week_index_of(period, config);
    std::map<std::string, double> prior;
    for (const iiq::PeriodResult& r : period_rows) {
      const auto it = credits.find(r.user_id);
      prior[r.user_id] = (it != credits.end() && it->second.week == week) ? it->second.hours : 0.0;
    }
    summaries.push_back(iiq::summarize(period_rows, snapshot.users, config, prior));
    for (const iiq::PeriodResult& r : period_rows) {
      const double already = prior[r.user_id];
      const double credit = std::min(r.est_hours_saved, std::max(0.0, weekly_cap - already));
      credits[r.user_id] = {week, already + credit};
    }
  }

  write_file(out_path, iiq::render_summary_csv(summaries));
  std::cout << "wrote " << out_path << " (" << summaries.size() << " periods)\n";
  return 0;
}

int run_simulate(const std::string& scenario, const std::string& out_dir,
                 std::optional<std::uint64_t> seed, bool svg) {
  std::filesystem::create_directories(out_dir);

  if (scenario == "anti_gaming" || scenario == "temporal_response") {
    const iiq::SeriesTable table = iiq::figure_traces(scenario);
    const std::string csv_path = out_dir + "/" + scenario + ".csv";
    write_file(csv_path, iiq::render_series_csv(table));
    std::cout << "wrote " << csv_path << '\n';
    if (svg) {
      const std::string svg_path = out_dir + "/" + scenario + ".svg";
      write_file(svg_path, iiq::render_series_svg(table));
      std::cout << "wrote " << svg_path << '\n';
    }
    return 0;
  }

  const iiq::EngineConfig config;  // scenarios always run on the shipped defaults
  const iiq::ScenarioRun run = iiq::run_scenario(scenario, config, seed);

  const std::string results_path = out_dir + "/scenario_" + scenario + "_results.csv";
  write_file(results_path, iiq::render_results_csv(run.results, config));
  const std::string events_path = out_dir + "/scenario_" + scenario + "_events.jsonl";
  write_file(events_path,
             iiq::render_event_log(run.trace, {{run.spec.user_id, run.spec.leverage_level}}));
  std::cout << "wrote " << results_path << " (" << run.results.size() << " rows) and "
            << events_path << " (" << run.trace.size() << " events)\n";
  return 0;
}

int run_convert(double alpha, double period_hours, std::optional<double> lambda) {
  if (alpha <= 0.0 || alpha >= 1.0) throw iiq::Error("alpha out of range (0,1)");
  if (period_hours <= 0.0) throw iiq::Error("period-hours must be positive");
  std::cout << "alpha_periodic = " << sig12(iiq::convert_decay(alpha, period_hours)) << '\n';
  if (lambda.has_value()) {
    if (*lambda <= 0.0) throw iiq::Error("lambda must be positive");
    std::cout << "lambda_periodic = " << sig12(iiq::convert_lambda(*lambda, period_hours))
              << '\n';
  }
  return 0;
}

int run_oracle(const std::string& events_path, const std::string& config_path, int level) {
  const iiq::EngineConfig config = iiq::load_config(read_file(config_path));
  const iiq::EventLogParse parse = iiq::parse_event_log(read_file(events_path));
  std::vector<iiq::InteractionEvent> events;
  events.reserve(parse.records.size());
  for (const iiq::RawEventRecord& r : parse.records) {
    if (!events.empty() && r.event.user_id != events.front().user_id) {
      throw iiq::Error("oracle expects a single-user event log");
    }
    events.push_back(r.event);
  }
  const std::vector<iiq::PeriodResult> results = iiq::oracle_evaluate(events, config, level);
  std::cout << iiq::render_results_csv(results, config);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adoption-index engine: ingest AI interaction logs, score users, aggregate org "
               "views, simulate synthetic traces"};
  app.require_subcommand(1);

  auto* ingest = app.add_subcommand("ingest", "Process an event log into results + snapshot");
  std::string events_path, config_path, state_path, out_dir;
  ingest->add_option("--events", events_path, "Event log (JSONL)")->required();
  ingest->add_option("--config", config_path, "Engine config file")->required();
  ingest->add_option("--state", state_path, "Snapshot to resume from");
  ingest->add_option("--out-dir", out_dir, "Output directory")->required();

  auto* score = app.add_subcommand("score", "Print each user's latest index and delta");
  std::string score_state;
  score->add_option("--state", score_state, "Snapshot file")->required();

  auto* aggregate = app.add_subcommand("aggregate", "Org summary rows from results + states");
  std::string agg_results, agg_states, agg_out;
  aggregate->add_option("--results", agg_results, "Results CSV from ingest")->required();
  aggregate->add_option("--states", agg_states, "Snapshot file")->required();
  aggregate->add_option("--out", agg_out, "Summary CSV destination")->required();

  auto* simulate = app.add_subcommand("simulate", "Generate and evaluate a synthetic trace");
  std::string scenario, sim_out_dir;
  std::optional<std::uint64_t> sim_seed;
  bool sim_svg = false;
  simulate
      ->add_option("--scenario", scenario,
                   "A, B, C, D, anti_gaming, or temporal_response")
      ->required();
  simulate->add_option("--out-dir", sim_out_dir, "Output directory")->required();
  simulate->add_option("--seed", sim_seed, "Override the scenario RNG seed");
  simulate->add_flag("--svg", sim_svg, "Also write an SVG chart (figure families)");

  auto* convert = app.add_subcommand("convert", "Convert daily decay rates to a period length");
  double cv_alpha = 0.0, cv_period_hours = 0.0;
  std::optional<double> cv_lambda;
  convert->add_option("--alpha", cv_alpha, "Daily decay rate in (0,1)")->required();
  convert->add_option("--period-hours", cv_period_hours, "Period length in hours")->required();
  convert->add_option("--lambda", cv_lambda, "Daily recency decay rate");

  auto* oracle = app.add_subcommand("oracle", "Brute-force reference evaluation (debugging)");
  oracle->group("");  // hidden
  std::string orc_events, orc_config;
  int orc_level = 1;
  oracle->add_option("--events", orc_events, "Single-user event log (JSONL)")->required();
  oracle->add_option("--config", orc_config, "Engine config file")->required();
  oracle->add_option("--level", orc_level, "Leverage level")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(ingest)) return run_ingest(events_path, config_path, state_path, out_dir);
    if (app.got_subcommand(score)) return run_score(score_state);
    if (app.got_subcommand(aggregate)) return run_aggregate(agg_results, agg_states, agg_out);
    if (app.got_subcommand(simulate)) return run_simulate(scenario, sim_out_dir, sim_seed, sim_svg);
    if (app.got_subcommand(convert)) return run_convert(cv_alpha, cv_period_hours, cv_lambda);
    if (app.got_subcommand(oracle)) return run_oracle(orc_events, orc_config, orc_level);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
