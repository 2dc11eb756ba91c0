// pgraph: plan, benchmark, render and validate possibility-graph scenarios.
//
// Exit status: 0 solved / valid, 2 timed out, 1 error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "pgraph/bench.hpp"
#include "pgraph/planner.hpp"
#include "pgraph/render.hpp"
#include "pgraph/scenario.hpp"
#include "pgraph/trace.hpp"

namespace {

constexpr int kExitSolved = 0;
constexpr int kExitError = 1;
constexpr int kExitTimeout = 2;

struct Source {
  std::string scenario_path;
  std::string builtin;

  void add_to(CLI::App* cmd) {
    auto* file = cmd->add_option("--scenario", scenario_path, "Scenario document (JSON)");
    auto* named = cmd->add_option("--builtin", builtin, "Built-in scenario name");
    file->excludes(named);
  }

  pgraph::Scenario load() const {
    if (!builtin.empty()) return pgraph::builtin_scenario(builtin);
    if (scenario_path.empty()) throw pgraph::ScenarioError("", "one of --scenario or --builtin is required");
    return pgraph::load_scenario_file(scenario_path);
  }
};

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<double> time_limit;
  std::optional<std::string> actions;
  std::optional<double> skip_prob;
  std::optional<int> workers;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--seed", seed, "RNG seed (first seed for bench)");
    cmd->add_option("--time-limit", time_limit, "Planner time limit in seconds");
    cmd->add_option("--actions", actions, "Comma-separated enabled actions, e.g. walk,crawl");
    cmd->add_option("--skip-prob", skip_prob, "Jump skip probability");
    cmd->add_option("--workers", workers, "Confirmation workers (0 = inline)");
  }

  void apply(pgraph::Scenario& s) const {
    if (seed) s.planner.rng_seed = *seed;
    if (time_limit) s.planner.time_limit = *time_limit;
    if (skip_prob) s.planner.jump_skip_probability = *skip_prob;
    if (workers) s.planner.workers = *workers;
    if (actions) {
      s.enabled_actions.clear();
      std::stringstream in(*actions);
      for (std::string item; std::getline(in, item, ',');) {
        if (!item.empty()) s.enabled_actions.push_back(item);
      }
    }
    pgraph::validate_scenario(s);
  }
};

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
}

void configure_logging() {
  auto logger = spdlog::stderr_color_mt("pgraph");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  const char* level = std::getenv("PG_LOG");
  spdlog::set_level(level ? spdlog::level::from_str(level) : spdlog::level::warn);
}

int cmd_plan(const Source& source, const Overrides& overrides, const std::string& trace_out,
             const std::string& svg_out) {
  pgraph::Scenario scenario = source.load();
  overrides.apply(scenario);
  spdlog::info("planning '{}' seed {} actions {}", scenario.name, scenario.planner.rng_seed,
               scenario.enabled_actions.size());

  std::ostringstream trace;
  pgraph::Planner planner(scenario, (trace_out.empty() && svg_out.empty()) ? nullptr : &trace);
  const auto solution = planner.run();
  const pgraph::RunSummary& summary = planner.summary();
  spdlog::info("{} after {} iterations", summary.solved ? "solved" : "timed out", summary.iterations);

  if (!trace_out.empty()) write_file(trace_out, trace.str());
  if (!svg_out.empty()) {
    std::istringstream in(trace.str());
    write_file(svg_out, pgraph::render_svg(planner.scenario(), pgraph::read_trace(in)));
  }
  std::cout << pgraph::to_json(summary) << std::endl;
  return solution ? kExitSolved : kExitTimeout;
}

int cmd_bench(const Source& source, const Overrides& overrides, std::size_t trials) {
  pgraph::Scenario scenario = source.load();
  overrides.apply(scenario);
  const std::uint64_t seed0 = scenario.planner.rng_seed;
  std::vector<pgraph::RunSummary> runs;
  for (std::size_t i = 0; i < trials; ++i) {
    pgraph::Scenario s = scenario;
    s.planner.rng_seed = seed0 + i;
    runs.push_back(pgraph::find_path(s).summary);
    spdlog::info("trial {} seed {}: {}", i, s.planner.rng_seed, pgraph::to_json(runs.back()));
  }
  const auto report = pgraph::aggregate(scenario.name, scenario.enabled_actions.size(), runs);
  std::cout << pgraph::to_json(report) << std::endl;
  return kExitSolved;
}

int cmd_render(const Source& source, const std::string& trace_path, const std::string& svg_out) {
  const pgraph::Scenario scenario = source.load();
  pgraph::TraceSummary trace;
  if (!trace_path.empty()) {
    std::ifstream in(trace_path);
    if (!in) throw std::runtime_error("cannot open trace '" + trace_path + "'");
    trace = pgraph::read_trace(in);
  }
  const std::string svg = pgraph::render_svg(scenario, trace);
  if (svg_out.empty()) {
    std::cout << svg;
  } else {
    write_file(svg_out, svg);
  }
  return kExitSolved;
}

int cmd_validate(const Source& source) {
  const pgraph::Scenario scenario = source.load();
  std::cout << "ok: " << (scenario.name.empty() ? "scenario" : scenario.name) << std::endl;
  return kExitSolved;
}

int cmd_export(const std::string& name, const std::string& out) {
  const std::string doc = pgraph::serialize_scenario(pgraph::builtin_scenario(name));
  if (out.empty()) {
    std::cout << doc;
  } else {
    write_file(out, doc);
  }
  return kExitSolved;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Possibility-graph multi-modal planner"};
  app.require_subcommand(1);

  Source plan_src, bench_src, render_src, validate_src;
  Overrides plan_ovr, bench_ovr;
  std::string trace_out, svg_out, trace_in, render_svg_out, export_name, export_out;
  std::size_t trials = 50;

  auto* plan = app.add_subcommand("plan", "Plan once and print the run summary");
  plan_src.add_to(plan);
  plan_ovr.add_to(plan);
  plan->add_option("--trace-out", trace_out, "Write the event trace here");
  plan->add_option("--svg-out", svg_out, "Write a top-down SVG here");

  auto* bench = app.add_subcommand("bench", "Run seeded trials and print a benchmark report");
  bench_src.add_to(bench);
  bench_ovr.add_to(bench);
  bench->add_option("--trials", trials, "Number of trials")->check(CLI::PositiveNumber);

  auto* render = app.add_subcommand("render", "Render a trace to SVG");
  render_src.add_to(render);
  render->add_option("--trace", trace_in, "Trace file; omit for the environment only");
  render->add_option("--svg-out", render_svg_out, "Output file (default stdout)");

  auto* validate = app.add_subcommand("validate", "Check a scenario document");
  validate_src.add_to(validate);

  auto* exporter = app.add_subcommand("export", "Print a built-in scenario as a document");
  exporter->add_option("name", export_name, "Built-in scenario name")->required();
  exporter->add_option("-o,--out", export_out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  configure_logging();
  try {
    if (plan->parsed()) return cmd_plan(plan_src, plan_ovr, trace_out, svg_out);
    if (bench->parsed()) return cmd_bench(bench_src, bench_ovr, trials);
    if (render->parsed()) return cmd_render(render_src, trace_in, render_svg_out);
    if (validate->parsed()) return cmd_validate(validate_src);
    if (exporter->parsed()) return cmd_export(export_name, export_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return kExitError;
  }
  return kExitError;
}
