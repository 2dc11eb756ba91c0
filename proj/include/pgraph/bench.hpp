#pragma once

#include <string>
#include <vector>

#include "pgraph/planner.hpp"

namespace pgraph {

/// Aggregate of seeded trials. Times and sizes average over successful trials only;
/// the success rate counts every trial.
struct BenchReport {
  std::string scenario;
  std::size_t action_count = 0;
  std::size_t trials = 0;
  double success_rate = 0.0;
  double graph_time_mean = 0.0;
  double graph_time_std = 0.0;  // sample deviation; 0 with fewer than two successes
  double vertices_mean = 0.0;
  double edges_mean = 0.0;
};

BenchReport aggregate(const std::string& scenario, std::size_t action_count, const std::vector<RunSummary>& runs);

/// Runs `trials` plans with seeds seed0, seed0 + 1, ...; summaries land in `runs`.
BenchReport run_bench(const Scenario& scenario, std::size_t trials, std::uint64_t seed0,
                      std::vector<RunSummary>* runs = nullptr);

std::string to_json(const RunSummary& summary);
std::string to_json(const BenchReport& report);

}  // namespace pgraph
