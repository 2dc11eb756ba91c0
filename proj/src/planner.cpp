#include "pgraph/planner.hpp"

#include <cmath>
#include <numbers>

#include "pgraph/growth.hpp"
#include "pgraph/jobs.hpp"
#include "pgraph/takeoff.hpp"

namespace pgraph {

Pose random_sample(const SamplingBounds& bounds, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double x = bounds.x.lo + unit(rng) * bounds.x.length();
  const double y = bounds.y.lo + unit(rng) * bounds.y.length();
  const double yaw = -std::numbers::pi + unit(rng) * 2.0 * std::numbers::pi;
  return Pose::from_xyz_rpy({x, y, 0.0}, 0.0, 0.0, yaw < std::numbers::pi ? yaw : -std::numbers::pi);
}

namespace {

std::shared_ptr<const Scenario> validated(Scenario scenario) {
  validate_scenario(scenario);
  return std::make_shared<const Scenario>(std::move(scenario));
}

std::vector<std::string> names_of(const ActionRegistry& registry) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < registry.size(); ++i) out.push_back(registry.name_of(static_cast<ActionId>(i)));
  return out;
}

// The first enabled gait whose sufficient condition holds; validation guarantees one.
ActionId anchor_action(ActionRegistry& registry, const Pose& pose) {
  for (std::string_view name : {kWalk, kCrawl}) {
    if (const GaitAction* gait = registry.gait(name); gait && gait->sufficient(pose)) return gait->id();
  }
  throw ScenarioError("", "pose does not satisfy any enabled gait");
}

}  // namespace

Planner::Planner(Scenario scenario, std::ostream* trace)
    : scenario_(validated(std::move(scenario))),
      actions_(scenario_),
      rng_(scenario_->planner.rng_seed) {
  const PlannerConfig& config = scenario_->planner;
  queue_ = std::make_unique<ConfirmationQueue>(config.workers, config.slice_budget_ms, channel_);
  if (trace) {
    trace_ = std::make_unique<TraceWriter>(*trace, names_of(actions_), config.workers > 0);
    graph_.set_observer(trace_.get());
  }
  start_ = graph_.add_vertex(scenario_->start, anchor_action(actions_, scenario_->start), std::nullopt,
                             PossibilityGraph::Role::Start);
  for (const Pose& goal : scenario_->goals) {
    goals_.push_back(
        graph_.add_vertex(goal, anchor_action(actions_, goal), std::nullopt, PossibilityGraph::Role::Goal));
  }
  std::vector<VertexId> seeds{start_};
  seeds.insert(seeds.end(), goals_.begin(), goals_.end());
  enqueue_transitions(seeds, 0, true);
}

Planner::~Planner() {
  queue_->stop();
  graph_.set_observer(nullptr);
}

double Planner::elapsed_s() const {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - began_).count();
}

void Planner::enqueue_transitions(const std::vector<VertexId>& vertices, ActionId producer, bool all) {
  for (auto& action : actions_) {
    if (!all && action->id() == producer) continue;
    for (VertexId v : vertices) {
      if (action->accepts_transition_source(graph_.vertex(v))) action->transition_queue().insert(v);
    }
  }
}

std::optional<Solution> Planner::run() {
  began_ = std::chrono::steady_clock::now();
  queue_->launch();
  std::optional<Solution> solution;
  while (!solution && elapsed_s() < scenario_->planner.time_limit) solution = iterate();
  queue_->stop();
  summary_.vertices = graph_.vertices().size();
  summary_.edges = graph_.edges().size();
  if (solution) {
    summary_.solved = true;
    summary_.graph_time_s = solution->solve_time_s;
  } else {
    summary_.graph_time_s = elapsed_s();
  }
  return solution;
}

std::optional<Solution> Planner::iterate() {
  if (began_ == std::chrono::steady_clock::time_point{}) began_ = std::chrono::steady_clock::now();
  const PlannerConfig& config = scenario_->planner;
  ++summary_.iterations;
  if (trace_) trace_->set_clock(summary_.iterations);

  for (auto& action : actions_) {
    GrowthResult grown = perform_transitions(*action, graph_, rng_, config.max_transitions_per_cycle);
    const Pose target = random_sample(scenario_->sampling_bounds, rng_);
    grown.append(grow(*action, graph_, target, rng_, config.rotation_weight));
    enqueue_transitions(grown.vertices, action->id(), false);
  }

  drain_verdicts();

  for (std::size_t i = 0; i < goals_.size(); ++i) {
    if (!graph_.connected(start_, goals_[i])) continue;
    const std::vector<EdgeId> path = graph_.shortest_path(start_, goals_[i]);
    if (!confirm_path(path)) continue;
    Solution s;
    s.edges = path;
    s.goal_index = i;
    for (EdgeId e : path) {
      s.levels.push_back(graph_.edge(e).level);
      s.total_weight += graph_.edge(e).weight;
    }
    s.solve_time_s = elapsed_s();
    if (trace_) trace_->solution_found(i, s.edges, s.total_weight);
    return s;
  }
  return std::nullopt;
}

bool Planner::confirm_path(const std::vector<EdgeId>& path) {
  bool confirmed = true;
  for (EdgeId id : path) {
    const Edge& edge = graph_.edge(id);
    if (edge.level == ConditionLevel::SufficientMet || edge.level == ConditionLevel::Confirmed) continue;
    const EdgeCandidate candidate = candidate_of(graph_, edge);
    bool sufficient = false;
    for (auto& action : actions_) sufficient = sufficient || action->sufficient(candidate);
    if (sufficient) continue;
    confirmed = false;
    if (spawned_.count(id)) continue;
    bool necessary = false;
    for (auto& action : actions_) necessary = necessary || action->necessary(candidate);
    if (!necessary) {
      graph_.mark_edge(id, ConditionLevel::Refuted);
      continue;
    }
    graph_.remove_edge(id);
    spawned_.insert(id);
    ++summary_.jobs_spawned;
    auto job = actions_.at(edge.action).confirmation_job(graph_, graph_.edge(id));
    // Inline jobs post their verdict inside insert(); the spawn record must come first.
    const JobId next = static_cast<JobId>(summary_.jobs_spawned - 1);
    if (trace_) trace_->job_spawned(next, id);
    const JobId assigned = queue_->insert(std::move(job));
    if (assigned != next) throw std::logic_error("confirmation job ids out of step");
  }
  return confirmed;
}

void Planner::drain_verdicts() {
  for (const Verdict& v : channel_.drain()) {
    if (v.status == JobStatus::Confirmed) {
      ++summary_.jobs_confirmed;
      graph_.mark_edge(v.edge, ConditionLevel::Confirmed);
    } else {
      ++summary_.jobs_refuted;
      graph_.mark_edge(v.edge, ConditionLevel::Refuted);
    }
    if (trace_) trace_->job_resolved(v);
  }
}

PlanOutcome find_path(const Scenario& scenario, std::ostream* trace) {
  Planner planner(scenario, trace);
  PlanOutcome out;
  out.solution = planner.run();
  out.summary = planner.summary();
  return out;
}

// ---------------------------------------------------------------------------------
// Independent validation

namespace {

bool gait_pair_ok(const GaitSpec& spec, const Pose& a, const Pose& b, const Environment& env, const EdgeSampling& s) {
  try {
    return gait_edge_sufficient(spec, a, b, env, s);
  } catch (const AmbiguousSupportError&) {
    return false;
  }
}

bool transition_ok(const GaitSpec& from, const GaitSpec& to, const Pose& a, const Pose& b, const Environment& env) {
  try {
    return gait_sufficient(from, a, env) && gait_sufficient(to, b, env) && transition_motion_clear(from, to, a, b, env);
  } catch (const AmbiguousSupportError&) {
    return false;
  }
}

// Fresh jump check: endpoint validity, arc through both endpoints, fine collision sweep
// and a feasible take-off.
std::optional<std::string> jump_problem(const Scenario& sc, const Pose& launch, const Pose& landing,
                                        const JumpPayload& payload) {
  const RobotShape& robot = sc.robot;
  const Environment& env = sc.environment;
  if (!gait_sufficient(walk_spec(robot), launch, env)) return "launch is not a valid walk pose";
  if (!gait_sufficient(crawl_spec(robot), landing, env)) return "landing is not a valid crawl pose";
  const auto arc = parabola_for(launch.translation(), landing.translation(), payload.theta, robot.gravity);
  if (!arc) return "no arc at the recorded launch angle";
  if (arc->launch_speed > robot.v_max + 1e-9) return "launch speed exceeds v_max";
  if ((arc->position(1.0) - landing.translation()).norm() > 1e-6) return "arc misses the landing point";
  const Eigen::Vector2d heading = (landing.translation() - launch.translation()).head<2>().normalized();
  if (std::abs(wrap_angle(launch.yaw() - std::atan2(heading.y(), heading.x()))) > kFacingTolerance) {
    return "launch does not face the landing";
  }
  if (sweep_collides(robot.jump_sweep, *arc, launch.yaw(), env, kConfirmSweepStep)) return "arc collides";
  TakeoffBVP bvp{launch.translation() - Eigen::Vector3d(0.0, 0.0, robot.crouch_depth), launch.translation(),
                 arc->velocity_at_time(0.0), robot.a_max, robot.gravity};
  if (!solve_takeoff(bvp)) return "no feasible take-off";
  return std::nullopt;
}

}  // namespace

std::vector<std::string> validate_solution(const Scenario& sc, const PossibilityGraph& graph,
                                           const std::vector<std::string>& action_names, VertexId start,
                                           const std::vector<VertexId>& goals, const Solution& solution) {
  std::vector<std::string> problems;
  const auto fail = [&](std::size_t i, const std::string& what) {
    problems.push_back("edge " + std::to_string(i) + ": " + what);
  };
  if (solution.edges.empty()) {
    problems.push_back("empty path");
    return problems;
  }
  if (graph.edge(solution.edges.front()).from != start) problems.push_back("path does not begin at the start");
  if (solution.goal_index >= goals.size() || graph.edge(solution.edges.back()).to != goals[solution.goal_index]) {
    problems.push_back("path does not end at its goal");
  }

  const GaitSpec walk = walk_spec(sc.robot);
  const GaitSpec crawl = crawl_spec(sc.robot);
  const auto spec_for = [&](const std::string& name) -> const GaitSpec* {
    if (name == kWalk) return &walk;
    if (name == kCrawl) return &crawl;
    return nullptr;
  };
  const EdgeSampling coarse{sc.planner.rotation_weight, sc.planner.sweep_step};
  const EdgeSampling fine{sc.planner.rotation_weight, sc.planner.sweep_step / 5.0};

  for (std::size_t i = 0; i < solution.edges.size(); ++i) {
    const Edge& e = graph.edge(solution.edges[i]);
    if (i > 0 && graph.edge(solution.edges[i - 1]).to != e.from) fail(i, "not contiguous with the previous edge");
    if (e.removed) fail(i, "edge was removed");
    const Vertex& a = graph.vertex(e.from);
    const Vertex& b = graph.vertex(e.to);
    const std::string& name = action_names.at(e.action);
    const bool confirmed = e.level == ConditionLevel::Confirmed;
    if (e.level != ConditionLevel::SufficientMet && !confirmed) {
      fail(i, "neither sufficient nor confirmed");
      continue;
    }
    switch (e.kind) {
      case EdgeKind::Gait: {
        const GaitSpec* spec = spec_for(name);
        if (!spec || action_names.at(a.action) != name || action_names.at(b.action) != name) {
          fail(i, "gait edge between mismatched actions");
        } else if (!gait_pair_ok(*spec, a.pose, b.pose, sc.environment, confirmed ? fine : coarse)) {
          fail(i, "gait edge fails its sufficient condition");
        }
        break;
      }
      case EdgeKind::Transition: {
        const GaitSpec* from = spec_for(action_names.at(a.action));
        const GaitSpec* to = spec_for(action_names.at(b.action));
        if (!from || !to || from == to) {
          fail(i, "transition must join two different gaits");
        } else if (!transition_ok(*from, *to, a.pose, b.pose, sc.environment)) {
          fail(i, "transition fails its sufficient condition");
        }
        break;
      }
      case EdgeKind::Jump: {
        const auto* payload = std::get_if<JumpPayload>(&e.payload);
        if (!confirmed) {
          fail(i, "jump edge was never confirmed");
        } else if (!payload) {
          fail(i, "jump edge without an arc");
        } else if (action_names.at(a.action) != kWalk || action_names.at(b.action) != kCrawl) {
          fail(i, "jump must go from walk to crawl");
        } else if (const auto problem = jump_problem(sc, a.pose, b.pose, *payload)) {
          fail(i, *problem);
        }
        break;
      }
    }
  }
  return problems;
}

}  // namespace pgraph
