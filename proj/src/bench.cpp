#include "pgraph/bench.hpp"

#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace pgraph {

BenchReport aggregate(const std::string& scenario, std::size_t action_count, const std::vector<RunSummary>& runs) {
  BenchReport r;
  r.scenario = scenario;
  r.action_count = action_count;
  r.trials = runs.size();
  std::size_t solved = 0;
  for (const auto& s : runs) {
    if (!s.solved) continue;
    ++solved;
    r.graph_time_mean += s.graph_time_s;
    r.vertices_mean += static_cast<double>(s.vertices);
    r.edges_mean += static_cast<double>(s.edges);
  }
  if (!runs.empty()) r.success_rate = static_cast<double>(solved) / static_cast<double>(runs.size());
  if (solved == 0) return r;
  const auto n = static_cast<double>(solved);
  r.graph_time_mean /= n;
  r.vertices_mean /= n;
  r.edges_mean /= n;
  if (solved > 1) {
    double ss = 0.0;
    for (const auto& s : runs) {
      if (s.solved) ss += (s.graph_time_s - r.graph_time_mean) * (s.graph_time_s - r.graph_time_mean);
    }
    r.graph_time_std = std::sqrt(ss / (n - 1.0));
  }
  return r;
}

BenchReport run_bench(const Scenario& scenario, std::size_t trials, std::uint64_t seed0, std::vector<RunSummary>* runs) {
  if (trials == 0) throw std::invalid_argument("at least one trial is required");
  std::vector<RunSummary> summaries;
  for (std::size_t i = 0; i < trials; ++i) {
    Scenario s = scenario;
    s.planner.rng_seed = seed0 + i;
    summaries.push_back(find_path(s).summary);
  }
  BenchReport report = aggregate(scenario.name, scenario.enabled_actions.size(), summaries);
  if (runs) *runs = std::move(summaries);
  return report;
}

std::string to_json(const RunSummary& s) {
  return nlohmann::json{{"solved", s.solved},
                        {"graph_time_s", s.graph_time_s},
                        {"iterations", s.iterations},
                        {"vertices", s.vertices},
                        {"edges", s.edges},
                        {"jobs_spawned", s.jobs_spawned},
                        {"jobs_confirmed", s.jobs_confirmed},
                        {"jobs_refuted", s.jobs_refuted}}
      .dump();
}

std::string to_json(const BenchReport& r) {
  return nlohmann::json{{"scenario", r.scenario},
                        {"actions", r.action_count},
                        {"trials", r.trials},
                        {"success_rate", r.success_rate},
                        {"graph_time_mean", r.graph_time_mean},
                        {"graph_time_std", r.graph_time_std},
                        {"vertices_mean", r.vertices_mean},
                        {"edges_mean", r.edges_mean}}
      .dump();
}

}  // namespace pgraph
