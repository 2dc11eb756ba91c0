#include "pgraph/graph.hpp"

#include <cmath>
#include <deque>
#include <limits>
#include <queue>
#include <string>

namespace pgraph {
namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

std::int64_t quantize(double value, double resolution) {
  return static_cast<std::int64_t>(std::llround(value / resolution));
}

bool tight(double lhs, double rhs) { return std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, std::abs(lhs)); }

}  // namespace

PossibilityStatus possibility_of(ConditionLevel level) {
  switch (level) {
    case ConditionLevel::SufficientMet:
    case ConditionLevel::Confirmed:
      return PossibilityStatus::Possible;
    case ConditionLevel::NecessaryOnly:
      return PossibilityStatus::Indeterminate;
    case ConditionLevel::Refuted:
      return PossibilityStatus::Impossible;
  }
  return PossibilityStatus::Indeterminate;
}

std::string_view to_string(ConditionLevel level) {
  switch (level) {
    case ConditionLevel::SufficientMet: return "sufficient";
    case ConditionLevel::NecessaryOnly: return "necessary";
    case ConditionLevel::Confirmed: return "confirmed";
    case ConditionLevel::Refuted: return "refuted";
  }
  return "?";
}

std::string_view to_string(EdgeKind kind) {
  switch (kind) {
    case EdgeKind::Gait: return "gait";
    case EdgeKind::Transition: return "transition";
    case EdgeKind::Jump: return "jump";
  }
  return "?";
}

ConditionLevel condition_level_from_string(std::string_view text) {
  if (text == "sufficient") return ConditionLevel::SufficientMet;
  if (text == "necessary") return ConditionLevel::NecessaryOnly;
  if (text == "confirmed") return ConditionLevel::Confirmed;
  if (text == "refuted") return ConditionLevel::Refuted;
  throw std::invalid_argument("unknown condition level '" + std::string(text) + "'");
}

EdgeKind edge_kind_from_string(std::string_view text) {
  if (text == "gait") return EdgeKind::Gait;
  if (text == "transition") return EdgeKind::Transition;
  if (text == "jump") return EdgeKind::Jump;
  throw std::invalid_argument("unknown edge kind '" + std::string(text) + "'");
}

RefutedKey refuted_key(ActionId action, const Pose& from, const Pose& to) {
  const Eigen::Vector3d a = from.rpy();
  const Eigen::Vector3d b = to.rpy();
  return {action,
          quantize(from.x(), 0.05), quantize(from.y(), 0.05), quantize(from.z(), 0.05),
          quantize(a.x(), 0.1),     quantize(a.y(), 0.1),     quantize(a.z(), 0.1),
          quantize(to.x(), 0.05),   quantize(to.y(), 0.05),   quantize(to.z(), 0.05),
          quantize(b.x(), 0.1),     quantize(b.y(), 0.1),     quantize(b.z(), 0.1)};
}

VertexId PossibilityGraph::add_vertex(const Pose& pose, ActionId action, std::optional<SubgraphId> seed_subgraph,
                                      Role role, std::optional<VertexId> origin) {
  const VertexId id{static_cast<std::uint32_t>(vertices_.size())};
  SubgraphId sub;
  if (seed_subgraph) {
    if (seed_subgraph->value >= subgraphs_.size() || !subgraphs_[seed_subgraph->value].alive) {
      throw GraphError("unknown subgraph " + std::to_string(seed_subgraph->value));
    }
    sub = *seed_subgraph;
  } else {
    sub = SubgraphId{static_cast<std::uint32_t>(subgraphs_.size())};
    subgraphs_.push_back(Subgraph{sub, {}, false, false, true});
  }
  Subgraph& group = subgraphs_[sub.value];
  group.members.push_back(id);
  if (role == Role::Start) group.contains_start = true;
  if (role == Role::Goal) group.contains_goal = true;

  vertices_.push_back(Vertex{id, pose, action, sub, origin});
  out_edges_.emplace_back();
  in_edges_.emplace_back();
  if (observer_) observer_->on_vertex_added(vertices_.back());
  return id;
}

EdgeId PossibilityGraph::add_edge(VertexId from, VertexId to, ActionId action, EdgeKind kind, ConditionLevel level,
                                  double weight, EdgePayload payload) {
  if (from.value >= vertices_.size() || to.value >= vertices_.size()) {
    throw GraphError("edge endpoint does not exist");
  }
  if (from == to) throw GraphError("self-loop edges are not allowed");
  if (level == ConditionLevel::Refuted) throw GraphError("cannot insert a refuted edge");
  if (!(weight >= 0.0)) throw GraphError("edge weight must be non-negative");

  const EdgeId id{static_cast<std::uint32_t>(edges_.size())};
  edges_.push_back(Edge{id, from, to, action, kind, level, weight, std::move(payload), false});
  out_edges_[from.value].push_back(id);
  in_edges_[to.value].push_back(id);
  if (observer_) observer_->on_edge_added(edges_.back());

  const SubgraphId a = vertices_[from.value].subgraph;
  const SubgraphId b = vertices_[to.value].subgraph;
  if (a != b) merge(a, b);
  return id;
}

void PossibilityGraph::merge(SubgraphId a, SubgraphId b) {
  // Smaller group folds into the larger; on equal size the smaller id survives.
  Subgraph* into = &subgraphs_[a.value];
  Subgraph* from = &subgraphs_[b.value];
  if (from->members.size() > into->members.size() ||
      (from->members.size() == into->members.size() && from->id < into->id)) {
    std::swap(into, from);
  }
  for (VertexId v : from->members) vertices_[v.value].subgraph = into->id;
  into->members.insert(into->members.end(), from->members.begin(), from->members.end());
  into->contains_start = into->contains_start || from->contains_start;
  into->contains_goal = into->contains_goal || from->contains_goal;
  from->members.clear();
  from->alive = false;
  if (observer_) observer_->on_subgraphs_merged(into->id, from->id);
}

bool PossibilityGraph::connected(VertexId start, VertexId goal) const {
  if (start.value >= vertices_.size() || goal.value >= vertices_.size()) return false;
  // Sharing a subgraph is necessary for reachability; it only filters.
  if (vertices_[start.value].subgraph != vertices_[goal.value].subgraph) return false;
  if (start == goal) return true;

  std::vector<bool> seen(vertices_.size(), false);
  std::deque<VertexId> frontier{start};
  seen[start.value] = true;
  while (!frontier.empty()) {
    const VertexId u = frontier.front();
    frontier.pop_front();
    for (EdgeId e : out_edges_[u.value]) {
      const Edge& edge = edges_[e.value];
      if (edge.removed || seen[edge.to.value]) continue;
      if (edge.to == goal) return true;
      seen[edge.to.value] = true;
      frontier.push_back(edge.to);
    }
  }
  return false;
}

std::vector<double> PossibilityGraph::distances_to(VertexId goal) const {
  std::vector<double> dist(vertices_.size(), kInfinity);
  using Item = std::pair<double, std::uint32_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[goal.value] = 0.0;
  heap.emplace(0.0, goal.value);
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[u]) continue;
    for (EdgeId e : in_edges_[u]) {
      const Edge& edge = edges_[e.value];
      if (edge.removed) continue;
      const double candidate = d + edge.weight;
      if (candidate < dist[edge.from.value]) {
        dist[edge.from.value] = candidate;
        heap.emplace(candidate, edge.from.value);
      }
    }
  }
  return dist;
}

std::vector<EdgeId> PossibilityGraph::shortest_path(VertexId start, VertexId goal) const {
  if (!connected(start, goal)) throw GraphError("no path between the requested vertices");
  const std::vector<double> dist = distances_to(goal);

  // Walk forward taking the smallest-id edge that stays on some shortest path.
  std::vector<EdgeId> path;
  std::vector<bool> visited(vertices_.size(), false);
  VertexId u = start;
  visited[u.value] = true;
  while (u != goal) {
    std::optional<EdgeId> next;
    for (EdgeId e : out_edges_[u.value]) {
      const Edge& edge = edges_[e.value];
      if (edge.removed || visited[edge.to.value] || !std::isfinite(dist[edge.to.value])) continue;
      if (!tight(dist[u.value], edge.weight + dist[edge.to.value])) continue;
      if (!next || e < *next) next = e;
    }
    if (!next) throw GraphError("shortest path reconstruction failed");
    path.push_back(*next);
    u = edges_[next->value].to;
    visited[u.value] = true;
  }
  return path;
}

Edge& PossibilityGraph::edge_mut(EdgeId id) {
  if (id.value >= edges_.size()) throw GraphError("unknown edge " + std::to_string(id.value));
  return edges_[id.value];
}

void PossibilityGraph::remove_edge(EdgeId id) {
  Edge& edge = edge_mut(id);
  if (edge.removed) return;
  edge.removed = true;
  if (observer_) observer_->on_edge_removed(edge);
}

void PossibilityGraph::mark_edge(EdgeId id, ConditionLevel level) {
  Edge& edge = edge_mut(id);
  if (edge.level != ConditionLevel::NecessaryOnly) {
    throw GraphError("edge " + std::to_string(id.value) + " is already resolved");
  }
  if (level != ConditionLevel::Confirmed && level != ConditionLevel::Refuted) {
    throw GraphError("edges resolve only to confirmed or refuted");
  }
  edge.level = level;
  if (level == ConditionLevel::Confirmed) {
    edge.removed = false;
  } else {
    edge.removed = true;
    refuted_.insert(refuted_key(edge.action, vertices_[edge.from.value].pose, vertices_[edge.to.value].pose));
  }
  if (observer_) observer_->on_edge_marked(edge);
}

bool PossibilityGraph::is_refuted(ActionId action, const Pose& from, const Pose& to) const {
  return !refuted_.empty() && refuted_.count(refuted_key(action, from, to)) > 0;
}

VertexId PossibilityGraph::closest_vertex(SubgraphId subgraph, const Pose& target, double rotation_weight,
                                          const std::function<bool(const Vertex&)>& filter) const {
  const Subgraph& group = this->subgraph(subgraph);
  std::optional<VertexId> best;
  double best_distance = kInfinity;
  for (VertexId id : group.members) {
    const Vertex& v = vertices_[id.value];
    if (filter && !filter(v)) continue;
    const double d = pose_distance(v.pose, target, rotation_weight);
    if (d < best_distance || (d == best_distance && best && id < *best)) {
      best = id;
      best_distance = d;
    }
  }
  if (!best) throw GraphError("closest_vertex on an empty subgraph");
  return *best;
}

bool PossibilityGraph::upstream_from_goal(VertexId v) const {
  return subgraphs_[vertex(v).subgraph.value].contains_goal;
}

bool PossibilityGraph::downstream_from_start(VertexId v) const {
  return subgraphs_[vertex(v).subgraph.value].contains_start;
}

std::vector<bool> PossibilityGraph::downstream_mask(VertexId v) const {
  std::vector<bool> mask(vertices_.size(), false);
  std::vector<VertexId> stack{v};
  mask[v.value] = true;
  while (!stack.empty()) {
    const VertexId u = stack.back();
    stack.pop_back();
    for (EdgeId e : out_edges_[u.value]) {
      const Edge& edge = edges_[e.value];
      if (edge.removed || mask[edge.to.value]) continue;
      mask[edge.to.value] = true;
      stack.push_back(edge.to);
    }
  }
  return mask;
}

std::vector<bool> PossibilityGraph::upstream_mask(VertexId v) const {
  std::vector<bool> mask(vertices_.size(), false);
  std::vector<VertexId> stack{v};
  mask[v.value] = true;
  while (!stack.empty()) {
    const VertexId u = stack.back();
    stack.pop_back();
    for (EdgeId e : in_edges_[u.value]) {
      const Edge& edge = edges_[e.value];
      if (edge.removed || mask[edge.from.value]) continue;
      mask[edge.from.value] = true;
      stack.push_back(edge.from);
    }
  }
  return mask;
}

const Vertex& PossibilityGraph::vertex(VertexId id) const {
  if (id.value >= vertices_.size()) throw GraphError("unknown vertex " + std::to_string(id.value));
  return vertices_[id.value];
}

const Edge& PossibilityGraph::edge(EdgeId id) const {
  if (id.value >= edges_.size()) throw GraphError("unknown edge " + std::to_string(id.value));
  return edges_[id.value];
}

const Subgraph& PossibilityGraph::subgraph(SubgraphId id) const {
  if (id.value >= subgraphs_.size()) throw GraphError("unknown subgraph " + std::to_string(id.value));
  return subgraphs_[id.value];
}

std::size_t PossibilityGraph::live_subgraph_count() const {
  std::size_t n = 0;
  for (const auto& s : subgraphs_) n += s.alive ? 1 : 0;
  return n;
}

std::size_t PossibilityGraph::active_edge_count() const {
  std::size_t n = 0;
  for (const auto& e : edges_) n += e.removed ? 0 : 1;
  return n;
}

}  // namespace pgraph
