#include "pgraph/growth.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace pgraph {

void GrowthResult::append(const GrowthResult& other) {
  vertices.insert(vertices.end(), other.vertices.begin(), other.vertices.end());
  edges.insert(edges.end(), other.edges.begin(), other.edges.end());
}

GrowthResult perform_transitions(Action& action, PossibilityGraph& graph, Rng& rng, int limit) {
  GrowthResult result;
  TransitionQueue& queue = action.transition_queue();
  for (int i = 0; i < limit; ++i) {
    const auto v = queue.pop_random(rng);
    if (!v) break;
    const std::size_t edges_before = graph.edges().size();
    for (VertexId u : action.transition_from(*v, graph)) result.vertices.push_back(u);
    for (std::size_t e = edges_before; e < graph.edges().size(); ++e) {
      result.edges.push_back(EdgeId{static_cast<std::uint32_t>(e)});
    }
  }
  return result;
}

namespace {

// Adds a <-> b as a pair of gait edges of the given level.
void link(const GaitAction& action, PossibilityGraph& graph, VertexId a, VertexId b, ConditionLevel level,
          GrowthResult& result) {
  const double w = pose_distance(graph.vertex(a).pose, graph.vertex(b).pose, action.sampling().rotation_weight);
  result.edges.push_back(graph.add_edge(a, b, action.id(), EdgeKind::Gait, level, w));
  result.edges.push_back(graph.add_edge(b, a, action.id(), EdgeKind::Gait, level, w));
}

}  // namespace

GrowthResult holonomic_connect(const GaitAction& action, PossibilityGraph& graph, VertexId from, const Pose& target,
                               std::optional<VertexId> target_vertex, GrowthDiagnostics* diagnostics) {
  GrowthResult result;
  if (diagnostics) diagnostics->connect_origins.push_back(from);
  const double w = action.sampling().rotation_weight;
  const double step = action.step_size();

  VertexId last = from;
  Pose steer = graph.vertex(from).pose;
  // Taken by value since `target` may alias vertex storage. Samples carry no height or
  // tilt, so steering happens in the gait's own posture at the current height.
  const Pose aim = Pose::from_xyz_rpy({target.x(), target.y(), steer.z()}, 0.0, action.spec().nominal_pitch, target.yaw());
  for (;;) {
    const double remaining = pose_distance(steer, aim, w);
    if (!(remaining > 0.0)) break;
    const bool arriving = remaining <= step;
    const Pose next = arriving ? aim : action.extend(steer, aim);

    if (arriving && target_vertex) {
      const Vertex goal_side = graph.vertex(*target_vertex);
      const Pose last_pose = graph.vertex(last).pose;
      if (goal_side.id == last) break;
      const EdgeCandidate c{EdgeKind::Gait, action.id(), action.id(), last_pose, goal_side.pose};
      if (graph.is_refuted(action.id(), last_pose, goal_side.pose)) break;
      if (const auto level = action.admit_edge(c)) link(action, graph, last, *target_vertex, *level, result);
      break;
    }

    const auto projected = action.project(next);
    if (!projected || !action.admits(*projected)) break;
    const Pose last_pose = graph.vertex(last).pose;
    if (pose_distance(last_pose, *projected, w) > 0.0) {
      if (graph.is_refuted(action.id(), last_pose, *projected)) break;
      const auto level = action.admit_edge(EdgeCandidate{EdgeKind::Gait, action.id(), action.id(), last_pose, *projected});
      if (!level) break;
      const VertexId u = graph.add_vertex(*projected, action.id(), graph.vertex(last).subgraph);
      result.vertices.push_back(u);
      link(action, graph, last, u, *level, result);
      last = u;
    }
    steer = next;
    if (arriving) break;
  }
  return result;
}

namespace {

struct Candidate {
  double distance;
  VertexId vertex;
  bool operator<(const Candidate& o) const { return std::tie(distance, vertex) < std::tie(o.distance, o.vertex); }
};

// Closest member of every subgraph holding vertices of `action`, nearest first.
std::vector<Candidate> closest_per_subgraph(const PossibilityGraph& graph, ActionId action, const Pose& target,
                                            double rotation_weight) {
  std::map<SubgraphId, Candidate> best;
  for (const Vertex& v : graph.vertices()) {
    if (v.action != action) continue;
    const Candidate c{pose_distance(v.pose, target, rotation_weight), v.id};
    const auto [it, inserted] = best.emplace(v.subgraph, c);
    if (!inserted && c < it->second) it->second = c;
  }
  std::vector<Candidate> out;
  out.reserve(best.size());
  for (const auto& [sub, c] : best) out.push_back(c);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

GrowthResult holonomic_grow_towards(const GaitAction& action, PossibilityGraph& graph, const Pose& target,
                                    double rotation_weight, GrowthDiagnostics* diagnostics) {
  GrowthResult result;
  const std::vector<Candidate> order = closest_per_subgraph(graph, action.id(), target, rotation_weight);
  if (order.empty()) return result;

  const VertexId v0 = order.front().vertex;
  const bool first_goal_side = graph.upstream_from_goal(v0);
  result.append(holonomic_connect(action, graph, v0, target, std::nullopt, diagnostics));

  const VertexId frontier = result.vertices.empty() ? v0 : result.vertices.back();
  for (std::size_t i = 1; i < order.size(); ++i) {
    const VertexId v1 = order[i].vertex;
    // The first Connect may already have merged this subgraph into v0's.
    if (graph.vertex(v1).subgraph == graph.vertex(frontier).subgraph) continue;
    if (first_goal_side && graph.upstream_from_goal(v1)) continue;
    // Copied: growing the graph reallocates vertex storage.
    const Pose retarget = graph.vertex(frontier).pose;
    const VertexId origin = graph.closest_vertex(graph.vertex(v1).subgraph, retarget, rotation_weight,
                                                 [&](const Vertex& v) { return v.action == action.id(); });
    result.append(holonomic_connect(action, graph, origin, retarget, frontier, diagnostics));
    break;
  }
  return result;
}

GrowthResult nonholonomic_grow_towards(const JumpAction& action, PossibilityGraph& graph, const Pose& target,
                                       double rotation_weight, GrowthDiagnostics* diagnostics) {
  GrowthResult result;
  std::vector<Candidate> order;
  for (const Vertex& v : graph.vertices()) {
    if (v.action == action.walk_id() || v.action == action.crawl_id()) {
      order.push_back({pose_distance(v.pose, target, rotation_weight), v.id});
    }
  }
  std::sort(order.begin(), order.end());
  const std::size_t snapshot = graph.vertices().size();
  std::vector<bool> useful(snapshot, true);

  const auto mask_out = [&](const std::vector<bool>& reach) {
    std::vector<VertexId> cleared;
    for (std::size_t i = 0; i < snapshot; ++i) {
      if (reach[i] && useful[i]) {
        useful[i] = false;
        cleared.push_back(VertexId{static_cast<std::uint32_t>(i)});
      }
    }
    if (diagnostics) diagnostics->masked.emplace_back(diagnostics->expanded.size(), std::move(cleared));
  };

  // Joins `v` to `pose` with a turn-in-place edge pair of v's gait, reusing v when the
  // poses coincide. nullopt when the turn is not admissible.
  const auto turn_vertex = [&](VertexId v, const Pose& pose, const GaitSpec& spec, GrowthGate gate) -> std::optional<VertexId> {
    const Vertex source = graph.vertex(v);
    if (pose_distance(source.pose, pose, rotation_weight) == 0.0) return v;
    const Environment& env = action.context().env;
    const EdgeSampling sampling{rotation_weight, action.context().sweep_step};
    std::optional<ConditionLevel> level;
    try {
      if (gait_edge_sufficient(spec, source.pose, pose, env, sampling)) {
        level = ConditionLevel::SufficientMet;
      } else if (gate == GrowthGate::Necessary && gait_edge_necessary(spec, source.pose, pose, env, sampling)) {
        level = ConditionLevel::NecessaryOnly;
      }
    } catch (const AmbiguousSupportError&) {
      level.reset();
    }
    if (!level || graph.is_refuted(source.action, source.pose, pose)) return std::nullopt;
    const ActionId gait = source.action;
    const double w = pose_distance(source.pose, pose, rotation_weight);
    const VertexId u = graph.add_vertex(pose, gait, source.subgraph);
    result.vertices.push_back(u);
    result.edges.push_back(graph.add_edge(v, u, gait, EdgeKind::Gait, *level, w));
    result.edges.push_back(graph.add_edge(u, v, gait, EdgeKind::Gait, *level, w));
    return u;
  };

  const JumpContext ctx = action.context();
  for (const Candidate& c : order) {
    const VertexId v = c.vertex;
    if (!useful[v.value]) continue;
    if (diagnostics) diagnostics->expanded.push_back(v);
    const Vertex vertex = graph.vertex(v);

    if (vertex.action == action.walk_id() && !graph.upstream_from_goal(v)) {
      const auto launch = action.find_launch(vertex.pose, target);
      if (!launch) continue;
      const Pose landing = action.extend(*launch, target);
      const auto payload = action.evaluate(*launch, landing);
      if (!payload || graph.is_refuted(action.id(), *launch, landing)) continue;
      const auto from = turn_vertex(v, *launch, ctx.walk, ctx.launch_gate);
      if (!from) continue;
      const VertexId to = graph.add_vertex(landing, action.crawl_id());
      result.vertices.push_back(to);
      result.edges.push_back(graph.add_edge(*from, to, action.id(), EdgeKind::Jump, ConditionLevel::NecessaryOnly,
                                            payload->arc_length, *payload));
      mask_out(graph.upstream_mask(v));
    } else if (vertex.action == action.crawl_id() && !graph.downstream_from_start(v)) {
      const auto landing = action.find_landing(vertex.pose, target);
      if (!landing) continue;
      const Pose launch = action.reverse_extend(*landing, target);
      const auto payload = action.evaluate(launch, *landing);
      if (!payload || graph.is_refuted(action.id(), launch, *landing)) continue;
      const auto to = turn_vertex(v, *landing, ctx.crawl, ctx.landing_gate);
      if (!to) continue;
      const VertexId from = graph.add_vertex(launch, action.walk_id());
      result.vertices.push_back(from);
      result.edges.push_back(graph.add_edge(from, *to, action.id(), EdgeKind::Jump, ConditionLevel::NecessaryOnly,
                                            payload->arc_length, *payload));
      mask_out(graph.downstream_mask(v));
    }
  }
  return result;
}

GrowthResult grow(Action& action, PossibilityGraph& graph, const Pose& target, Rng& rng, double rotation_weight,
                  GrowthDiagnostics* diagnostics) {
  const double draw = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  if (draw < action.skip_probability()) {
    if (diagnostics) diagnostics->skipped = true;
    return {};
  }
  if (auto* gait = dynamic_cast<GaitAction*>(&action)) {
    return holonomic_grow_towards(*gait, graph, target, rotation_weight, diagnostics);
  }
  if (auto* jump = dynamic_cast<JumpAction*>(&action)) {
    return nonholonomic_grow_towards(*jump, graph, target, rotation_weight, diagnostics);
  }
  return {};
}

}  // namespace pgraph
