#pragma once

#include <optional>
#include <vector>

#include "pgraph/action.hpp"

namespace pgraph {

/// Instrumentation of one growth step, consumed by tests and the trace.
struct GrowthDiagnostics {
  /// Vertices a holonomic Connect started from, in order.
  std::vector<VertexId> connect_origins;
  /// Vertices examined by the nonholonomic loop, in order.
  std::vector<VertexId> expanded;
  /// (number of vertices expanded so far, vertices masked out at that point).
  std::vector<std::pair<std::size_t, std::vector<VertexId>>> masked;
  bool skipped = false;
};

struct GrowthResult {
  std::vector<VertexId> vertices;
  std::vector<EdgeId> edges;

  void append(const GrowthResult& other);
};

/// Pops up to `limit` vertices from the action's transition queue and adds their
/// transition vertices and edges.
GrowthResult perform_transitions(Action& action, PossibilityGraph& graph, Rng& rng, int limit);

/// Steers from `from` towards `target`, adding gated vertices and bidirectional edges
/// until blocked or arrived. When `target_vertex` is given and reached, the last vertex
/// is linked to it instead of duplicating it.
GrowthResult holonomic_connect(const GaitAction& action, PossibilityGraph& graph, VertexId from, const Pose& target,
                               std::optional<VertexId> target_vertex = std::nullopt,
                               GrowthDiagnostics* diagnostics = nullptr);

/// Grows the closest subgraph of the action towards `target`, then grows a second
/// subgraph towards the first one's frontier. A goal-connected closest subgraph is
/// passed over so the goal side does not chase random samples.
GrowthResult holonomic_grow_towards(const GaitAction& action, PossibilityGraph& graph, const Pose& target,
                                    double rotation_weight, GrowthDiagnostics* diagnostics = nullptr);

/// Adds jumps out of start-side walk vertices and into goal-side crawl vertices,
/// masking vertices made redundant by an earlier success.
GrowthResult nonholonomic_grow_towards(const JumpAction& action, PossibilityGraph& graph, const Pose& target,
                                       double rotation_weight, GrowthDiagnostics* diagnostics = nullptr);

/// Dispatch with the action's skip probability. Draws exactly one uniform number.
GrowthResult grow(Action& action, PossibilityGraph& graph, const Pose& target, Rng& rng, double rotation_weight,
                  GrowthDiagnostics* diagnostics = nullptr);

}  // namespace pgraph
