#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <string_view>
#include <variant>
#include <vector>

#include "pgraph/jump.hpp"
#include "pgraph/pose.hpp"

namespace pgraph {

template <typename Tag>
struct StrongId {
  std::uint32_t value = 0;
  auto operator<=>(const StrongId&) const = default;
};

using VertexId = StrongId<struct VertexTag>;
using EdgeId = StrongId<struct EdgeTag>;
using SubgraphId = StrongId<struct SubgraphTag>;
using ActionId = std::uint16_t;

enum class PossibilityStatus { Impossible, Indeterminate, Possible };

enum class ConditionLevel { SufficientMet, NecessaryOnly, Confirmed, Refuted };

enum class EdgeKind { Gait, Transition, Jump };

PossibilityStatus possibility_of(ConditionLevel level);
std::string_view to_string(ConditionLevel level);
std::string_view to_string(EdgeKind kind);
ConditionLevel condition_level_from_string(std::string_view text);
EdgeKind edge_kind_from_string(std::string_view text);

using EdgePayload = std::variant<std::monostate, JumpPayload>;

struct Vertex {
  VertexId id;
  Pose pose;
  ActionId action = 0;
  SubgraphId subgraph;
  /// Vertex this one was created from by a transition, if any.
  std::optional<VertexId> origin;
};

struct Edge {
  EdgeId id;
  VertexId from;
  VertexId to;
  ActionId action = 0;
  EdgeKind kind = EdgeKind::Gait;
  ConditionLevel level = ConditionLevel::SufficientMet;
  double weight = 0.0;
  EdgePayload payload;
  /// Removed edges are invisible to connectivity and path queries.
  bool removed = false;
};

struct Subgraph {
  SubgraphId id;
  std::vector<VertexId> members;
  bool contains_start = false;
  bool contains_goal = false;
  bool alive = true;
};

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Receives structural events as they happen.
class GraphObserver {
 public:
  virtual ~GraphObserver() = default;
  virtual void on_vertex_added(const Vertex&) {}
  virtual void on_edge_added(const Edge&) {}
  virtual void on_subgraphs_merged(SubgraphId /*into*/, SubgraphId /*from*/) {}
  virtual void on_edge_removed(const Edge&) {}
  virtual void on_edge_marked(const Edge&) {}
};

/// Key under which refuted edges are remembered: action plus both endpoints quantized to
/// 0.05 m in translation and 0.1 rad in roll/pitch/yaw.
using RefutedKey = std::array<std::int64_t, 13>;
RefutedKey refuted_key(ActionId action, const Pose& from, const Pose& to);

/// The directed possibility graph with subgraph bookkeeping. Subgraphs are the
/// undirected components ever formed by edge insertion; removing an edge never
/// splits them.
class PossibilityGraph {
 public:
  enum class Role { Plain, Start, Goal };

  VertexId add_vertex(const Pose& pose, ActionId action, std::optional<SubgraphId> seed_subgraph = std::nullopt,
                      Role role = Role::Plain, std::optional<VertexId> origin = std::nullopt);

  EdgeId add_edge(VertexId from, VertexId to, ActionId action, EdgeKind kind, ConditionLevel level, double weight,
                  EdgePayload payload = {});

  /// Directed reachability over non-removed edges.
  bool connected(VertexId start, VertexId goal) const;

  /// Minimum-weight directed path; ties go to the lexicographically smallest edge-id
  /// sequence. Throws GraphError when not connected.
  std::vector<EdgeId> shortest_path(VertexId start, VertexId goal) const;

  void remove_edge(EdgeId edge);
  /// Confirmed reinstates a removed edge; Refuted removes it and records it in the
  /// refuted registry. Only NecessaryOnly edges may be marked.
  void mark_edge(EdgeId edge, ConditionLevel level);

  /// Member of the subgraph closest to `target` (ties: smallest id). `filter`, when
  /// given, restricts the candidates.
  VertexId closest_vertex(SubgraphId subgraph, const Pose& target, double rotation_weight,
                          const std::function<bool(const Vertex&)>& filter = {}) const;

  bool upstream_from_goal(VertexId v) const;
  bool downstream_from_start(VertexId v) const;

  /// Vertices reachable from v (downstream) / that can reach v (upstream), v included.
  std::vector<bool> downstream_mask(VertexId v) const;
  std::vector<bool> upstream_mask(VertexId v) const;

  bool is_refuted(ActionId action, const Pose& from, const Pose& to) const;

  const Vertex& vertex(VertexId id) const;
  const Edge& edge(EdgeId id) const;
  const Subgraph& subgraph(SubgraphId id) const;
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Subgraph>& subgraphs() const { return subgraphs_; }
  std::size_t live_subgraph_count() const;
  std::size_t active_edge_count() const;

  void set_observer(GraphObserver* observer) { observer_ = observer; }

 private:
  Edge& edge_mut(EdgeId id);
  void merge(SubgraphId a, SubgraphId b);
  std::vector<double> distances_to(VertexId goal) const;

  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::vector<Subgraph> subgraphs_;
  std::vector<std::vector<EdgeId>> out_edges_;
  std::vector<std::vector<EdgeId>> in_edges_;
  std::set<RefutedKey> refuted_;
  GraphObserver* observer_ = nullptr;
};

}  // namespace pgraph
