#pragma once

#include <chrono>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "pgraph/action.hpp"
#include "pgraph/confirmation.hpp"
#include "pgraph/graph.hpp"
#include "pgraph/scenario.hpp"
#include "pgraph/trace.hpp"

namespace pgraph {

struct Solution {
  std::vector<EdgeId> edges;
  std::vector<ConditionLevel> levels;
  double total_weight = 0.0;
  double solve_time_s = 0.0;
  std::size_t goal_index = 0;
};

struct RunSummary {
  bool solved = false;
  double graph_time_s = 0.0;
  std::uint64_t iterations = 0;
  std::size_t vertices = 0;
  std::size_t edges = 0;
  std::size_t jobs_spawned = 0;
  std::size_t jobs_confirmed = 0;
  std::size_t jobs_refuted = 0;
};

/// Uniform (x, y) in the bounds and uniform yaw in [-pi, pi); z, roll and pitch zero.
Pose random_sample(const SamplingBounds& bounds, Rng& rng);

/// The exploration loop. One instance plans once; the pieces are public for tests.
class Planner {
 public:
  /// Validates the scenario (throws ScenarioError) and seeds the graph with start and goals.
  explicit Planner(Scenario scenario, std::ostream* trace = nullptr);
  ~Planner();
  Planner(const Planner&) = delete;
  Planner& operator=(const Planner&) = delete;

  /// Runs until a confirmed path is found or the time limit passes.
  std::optional<Solution> run();

  /// One outer iteration: grow every action, apply verdicts, try to confirm a path.
  std::optional<Solution> iterate();

  /// Confirms every edge of `path` or spawns jobs for the ones that need it.
  bool confirm_path(const std::vector<EdgeId>& path);
  /// Applies all verdicts posted so far.
  void drain_verdicts();

  PossibilityGraph& graph() { return graph_; }
  const PossibilityGraph& graph() const { return graph_; }
  ActionRegistry& actions() { return actions_; }
  const Scenario& scenario() const { return *scenario_; }
  std::shared_ptr<const Scenario> shared_scenario() const { return scenario_; }
  VertexId start() const { return start_; }
  const std::vector<VertexId>& goals() const { return goals_; }
  const RunSummary& summary() const { return summary_; }
  Rng& rng() { return rng_; }
  ConfirmationQueue& confirmation_queue() { return *queue_; }

 private:
  void enqueue_transitions(const std::vector<VertexId>& vertices, ActionId producer, bool all);
  double elapsed_s() const;

  std::shared_ptr<const Scenario> scenario_;
  ActionRegistry actions_;
  PossibilityGraph graph_;
  Rng rng_;
  VerdictChannel channel_;
  std::unique_ptr<ConfirmationQueue> queue_;
  std::unique_ptr<TraceWriter> trace_;
  std::set<EdgeId> spawned_;
  VertexId start_;
  std::vector<VertexId> goals_;
  RunSummary summary_;
  std::chrono::steady_clock::time_point began_;
};

/// Convenience: plan once and return the solution (if any) and run summary.
struct PlanOutcome {
  std::optional<Solution> solution;
  RunSummary summary;
};
PlanOutcome find_path(const Scenario& scenario, std::ostream* trace = nullptr);

/// Independent re-check of a solution from scratch: contiguity, endpoints, and for every
/// edge its sufficient condition or (for confirmed edges) a fresh confirmation. Returns
/// the problems found; empty means valid.
std::vector<std::string> validate_solution(const Scenario& scenario, const PossibilityGraph& graph,
                                           const std::vector<std::string>& action_names, VertexId start,
                                           const std::vector<VertexId>& goals, const Solution& solution);

}  // namespace pgraph
