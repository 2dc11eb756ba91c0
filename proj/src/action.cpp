#include "pgraph/action.hpp"

#include <algorithm>

#include "pgraph/jobs.hpp"

namespace pgraph {

EdgeCandidate candidate_of(const PossibilityGraph& graph, const Edge& edge) {
  const Vertex& a = graph.vertex(edge.from);
  const Vertex& b = graph.vertex(edge.to);
  return EdgeCandidate{edge.kind, a.action, b.action, a.pose, b.pose};
}

bool TransitionQueue::insert(VertexId v) {
  if (attempted_.count(v) || !members_.insert(v).second) return false;
  queued_.push_back(v);
  return true;
}

std::optional<VertexId> TransitionQueue::pop_random(Rng& rng) {
  if (queued_.empty()) return std::nullopt;
  std::uniform_int_distribution<std::size_t> pick(0, queued_.size() - 1);
  const std::size_t i = pick(rng);
  const VertexId v = queued_[i];
  queued_[i] = queued_.back();
  queued_.pop_back();
  members_.erase(v);
  attempted_.insert(v);
  return v;
}

// ---------------------------------------------------------------------------------

GaitAction::GaitAction(std::shared_ptr<const Scenario> scenario, GaitSpec spec, GaitSpec partner, ActionId id,
                       std::optional<ActionId> partner_id)
    : Action(spec.name, id, scenario->planner.gate_for(spec.name), 0.0),
      scenario_(std::move(scenario)),
      spec_(std::move(spec)),
      partner_(std::move(partner)),
      partner_id_(partner_id) {}

namespace {

// Support that straddles slabs of different heights counts as unsupported.
template <typename F>
bool guarded(F&& check) {
  try {
    return check();
  } catch (const AmbiguousSupportError&) {
    return false;
  }
}

}  // namespace

bool GaitAction::sufficient(const Pose& pose) const {
  return guarded([&] { return gait_sufficient(spec_, pose, environment()); });
}

bool GaitAction::necessary(const Pose& pose) const {
  return guarded([&] { return gait_necessary(spec_, pose, environment()); });
}

bool GaitAction::admits(const Pose& pose) const {
  return gate() == GrowthGate::Sufficient ? sufficient(pose) : necessary(pose);
}

bool GaitAction::sufficient(const EdgeCandidate& edge) const {
  return guarded([&] { return edge_sufficient(edge); });
}

bool GaitAction::necessary(const EdgeCandidate& edge) const {
  return guarded([&] { return edge_necessary(edge); });
}

bool GaitAction::edge_sufficient(const EdgeCandidate& edge) const {
  if (edge.kind == EdgeKind::Gait) return gait_edge_sufficient(spec_, edge.from, edge.to, environment(), sampling());
  if (edge.kind != EdgeKind::Transition) return false;
  // Transition edges run in both directions; the check is symmetric.
  const bool forward = edge.to_action == id();
  const Pose& mine = forward ? edge.to : edge.from;
  const Pose& theirs = forward ? edge.from : edge.to;
  return gait_sufficient(partner_, theirs, environment()) && gait_sufficient(spec_, mine, environment()) &&
         transition_motion_clear(partner_, spec_, theirs, mine, environment());
}

bool GaitAction::edge_necessary(const EdgeCandidate& edge) const {
  if (edge.kind == EdgeKind::Gait) return gait_edge_necessary(spec_, edge.from, edge.to, environment(), sampling());
  if (edge.kind != EdgeKind::Transition) return false;
  const bool forward = edge.to_action == id();
  const Pose& mine = forward ? edge.to : edge.from;
  const Pose& theirs = forward ? edge.from : edge.to;
  return gait_necessary(partner_, theirs, environment()) && gait_necessary(spec_, mine, environment()) &&
         transition_motion_clear(partner_, spec_, theirs, mine, environment());
}

std::optional<ConditionLevel> GaitAction::admit_edge(const EdgeCandidate& edge) const {
  if (sufficient(edge)) return ConditionLevel::SufficientMet;
  if (gate() == GrowthGate::Necessary && necessary(edge)) return ConditionLevel::NecessaryOnly;
  return std::nullopt;
}

Pose GaitAction::extend(const Pose& from, const Pose& to) const {
  return gait_extend(from, to, scenario_->planner.step_size, scenario_->planner.rotation_weight);
}

std::optional<Pose> GaitAction::project(const Pose& pose) const {
  try {
    return gait_project(spec_, pose, environment());
  } catch (const AmbiguousSupportError&) {
    return std::nullopt;
  }
}

bool GaitAction::accepts_transition_source(const Vertex& v) const {
  return partner_id_ && v.action == *partner_id_;
}

std::vector<VertexId> GaitAction::transition_from(VertexId v, PossibilityGraph& graph) const {
  const Vertex source = graph.vertex(v);
  if (!accepts_transition_source(source)) return {};
  // Leaving a vertex that was itself entered from this gait would just undo that transition.
  if (source.origin && graph.vertex(*source.origin).action == id()) return {};
  std::optional<Pose> target;
  try {
    target = gait_transition_from(spec_, partner_, source.pose, environment(), gate());
  } catch (const AmbiguousSupportError&) {
    return {};
  }
  if (!target) return {};
  const EdgeCandidate forward{EdgeKind::Transition, source.action, id(), source.pose, *target};
  const auto level = admit_edge(forward);
  if (!level) return {};
  if (graph.is_refuted(id(), source.pose, *target)) return {};
  const VertexId u = graph.add_vertex(*target, id(), source.subgraph, PossibilityGraph::Role::Plain, v);
  graph.add_edge(v, u, id(), EdgeKind::Transition, *level, kTransitionEdgeWeight);
  graph.add_edge(u, v, id(), EdgeKind::Transition, *level, kTransitionEdgeWeight);
  return {u};
}

std::unique_ptr<ConfirmationJob> GaitAction::confirmation_job(const PossibilityGraph& graph, const Edge& edge) const {
  return std::make_unique<GaitConfirmationJob>(edge.id, scenario_, spec_, partner_, id(), candidate_of(graph, edge));
}

// ---------------------------------------------------------------------------------

JumpAction::JumpAction(std::shared_ptr<const Scenario> scenario, ActionId id, ActionId walk_id, ActionId crawl_id,
                       GrowthGate walk_gate, GrowthGate crawl_gate)
    : Action(std::string(kJump), id, scenario->planner.gate_for(kJump), scenario->planner.jump_skip_probability),
      scenario_(std::move(scenario)),
      jump_(jump_spec(scenario_->robot)),
      walk_(walk_spec(scenario_->robot)),
      crawl_(crawl_spec(scenario_->robot)),
      walk_id_(walk_id),
      crawl_id_(crawl_id),
      walk_gate_(walk_gate),
      crawl_gate_(crawl_gate) {}

JumpContext JumpAction::context() const {
  return JumpContext{jump_, walk_, crawl_, scenario_->environment, scenario_->planner.sweep_step, walk_gate_, crawl_gate_};
}

bool JumpAction::necessary(const Pose& pose) const {
  try {
    return gait_necessary(walk_, pose, scenario_->environment) || gait_necessary(crawl_, pose, scenario_->environment);
  } catch (const AmbiguousSupportError&) {
    return false;
  }
}

bool JumpAction::necessary(const EdgeCandidate& edge) const {
  return edge.kind == EdgeKind::Jump && evaluate(edge.from, edge.to).has_value();
}

std::optional<JumpPayload> JumpAction::evaluate(const Pose& launch, const Pose& landing) const {
  try {
    return jump_necessary(context(), launch, landing);
  } catch (const AmbiguousSupportError&) {
    return std::nullopt;
  }
}

Pose JumpAction::extend(const Pose& launch, const Pose& target) const {
  try {
    return jump_extend(context(), launch, target);
  } catch (const AmbiguousSupportError&) {
    return launch;
  }
}

Pose JumpAction::reverse_extend(const Pose& landing, const Pose& target) const {
  try {
    return jump_reverse_extend(context(), landing, target);
  } catch (const AmbiguousSupportError&) {
    return landing;
  }
}

std::optional<Pose> JumpAction::find_launch(const Pose& v, const Pose& target) const {
  try {
    return jump_find_launch(context(), v, target);
  } catch (const AmbiguousSupportError&) {
    return std::nullopt;
  }
}

std::optional<Pose> JumpAction::find_landing(const Pose& v, const Pose& target) const {
  try {
    return jump_find_landing(context(), v, target);
  } catch (const AmbiguousSupportError&) {
    return std::nullopt;
  }
}

std::unique_ptr<ConfirmationJob> JumpAction::confirmation_job(const PossibilityGraph& graph, const Edge& edge) const {
  const auto* payload = std::get_if<JumpPayload>(&edge.payload);
  if (!payload) throw GraphError("jump edge without a payload");
  return std::make_unique<JumpConfirmationJob>(edge.id, scenario_, graph.vertex(edge.from).pose, *payload);
}

// ---------------------------------------------------------------------------------

ActionRegistry::ActionRegistry(std::shared_ptr<const Scenario> scenario) {
  const auto index_of = [&](std::string_view name) -> std::optional<ActionId> {
    const auto& names = scenario->enabled_actions;
    const auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) return std::nullopt;
    return static_cast<ActionId>(it - names.begin());
  };
  const GaitSpec walk = walk_spec(scenario->robot);
  const GaitSpec crawl = crawl_spec(scenario->robot);
  for (std::size_t i = 0; i < scenario->enabled_actions.size(); ++i) {
    const std::string& name = scenario->enabled_actions[i];
    const auto id = static_cast<ActionId>(i);
    if (name == kWalk) {
      actions_.push_back(std::make_unique<GaitAction>(scenario, walk, crawl, id, index_of(kCrawl)));
    } else if (name == kCrawl) {
      actions_.push_back(std::make_unique<GaitAction>(scenario, crawl, walk, id, index_of(kWalk)));
    } else if (name == kJump) {
      const auto walk_id = index_of(kWalk);
      const auto crawl_id = index_of(kCrawl);
      if (!walk_id || !crawl_id) throw ScenarioError("enabled_actions", "jump needs walk and crawl enabled");
      actions_.push_back(std::make_unique<JumpAction>(scenario, id, *walk_id, *crawl_id,
                                                      scenario->planner.gate_for(kWalk),
                                                      scenario->planner.gate_for(kCrawl)));
    } else {
      throw ScenarioError("enabled_actions", "unknown action '" + name + "'");
    }
  }
}

Action* ActionRegistry::find(std::string_view name) {
  for (auto& a : actions_) {
    if (a->name() == name) return a.get();
  }
  return nullptr;
}

const Action* ActionRegistry::find(std::string_view name) const {
  return const_cast<ActionRegistry*>(this)->find(name);
}

std::optional<ActionId> ActionRegistry::id_of(std::string_view name) const {
  const Action* a = find(name);
  if (!a) return std::nullopt;
  return a->id();
}

GaitAction* ActionRegistry::gait(std::string_view name) { return dynamic_cast<GaitAction*>(find(name)); }

const GaitAction* ActionRegistry::gait(std::string_view name) const {
  return dynamic_cast<const GaitAction*>(find(name));
}

JumpAction* ActionRegistry::jump() { return dynamic_cast<JumpAction*>(find(kJump)); }

}  // namespace pgraph
