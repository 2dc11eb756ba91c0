#include <random>
#include <set>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "pgraph/graph.hpp"

using namespace pgraph;
using Role = PossibilityGraph::Role;

namespace {

Pose at(double x, double y = 0.0, double yaw = 0.0) { return Pose::from_xyz_rpy({x, y, 0.9}, 0, 0, yaw); }

VertexId vid(std::uint32_t i) { return VertexId{i}; }

// Checks that the live subgraphs partition the vertex set and agree with each vertex.
void expect_partition(const PossibilityGraph& g) {
  std::vector<int> seen(g.vertices().size(), 0);
  for (const Subgraph& s : g.subgraphs()) {
    if (!s.alive) {
      EXPECT_TRUE(s.members.empty());
      continue;
    }
    for (VertexId v : s.members) {
      ++seen[v.value];
      EXPECT_EQ(g.vertex(v).subgraph, s.id);
    }
  }
  for (int count : seen) EXPECT_EQ(count, 1);
}

struct RandomGraph {
  PossibilityGraph graph;
  std::vector<oracle::SmallEdge> edges;
  int n = 0;
};

RandomGraph random_graph(std::mt19937_64& rng, bool dag) {
  RandomGraph r;
  r.n = std::uniform_int_distribution<int>(2, 10)(rng);
  for (int i = 0; i < r.n; ++i) r.graph.add_vertex(at(i), 0);
  const int m = std::uniform_int_distribution<int>(0, 3 * r.n)(rng);
  std::uniform_int_distribution<int> pick(0, r.n - 1), weight(1, 6);
  for (int k = 0; k < m; ++k) {
    int a = pick(rng), b = pick(rng);
    if (a == b) continue;
    if (dag && a > b) std::swap(a, b);
    // Integer weights make ties common, which exercises the tie-break.
    const double w = weight(rng);
    r.graph.add_edge(vid(a), vid(b), 0, EdgeKind::Gait, ConditionLevel::SufficientMet, w);
    r.edges.push_back({a, b, w, false});
  }
  return r;
}

}  // namespace

TEST(Graph, StartAndGoalInitialisation) {
  PossibilityGraph g;
  const VertexId s = g.add_vertex(at(0), 0, std::nullopt, Role::Start);
  const VertexId t = g.add_vertex(at(5), 0, std::nullopt, Role::Goal);
  EXPECT_EQ(g.vertices().size(), 2u);
  EXPECT_EQ(g.live_subgraph_count(), 2u);
  EXPECT_TRUE(g.subgraph(g.vertex(s).subgraph).contains_start);
  EXPECT_FALSE(g.subgraph(g.vertex(s).subgraph).contains_goal);
  EXPECT_TRUE(g.upstream_from_goal(t));
  EXPECT_FALSE(g.downstream_from_start(t));
  const VertexId loose = g.add_vertex(at(2), 0);
  EXPECT_FALSE(g.upstream_from_goal(loose));
  EXPECT_FALSE(g.downstream_from_start(loose));
}

TEST(Graph, SeededVertexJoinsSubgraph) {
  PossibilityGraph g;
  const VertexId a = g.add_vertex(at(0), 0);
  const SubgraphId sub = g.vertex(a).subgraph;
  g.add_vertex(at(1), 0, sub);
  EXPECT_EQ(g.subgraph(sub).members.size(), 2u);
  EXPECT_EQ(g.live_subgraph_count(), 1u);
}

TEST(Graph, ThousandIsolatedVertices) {
  PossibilityGraph g;
  for (int i = 0; i < 1000; ++i) g.add_vertex(at(i), 0);
  EXPECT_EQ(g.live_subgraph_count(), 1000u);
  expect_partition(g);
}

TEST(Graph, EdgeMergesFlags) {
  PossibilityGraph g;
  const VertexId s = g.add_vertex(at(0), 0, std::nullopt, Role::Start);
  const VertexId t = g.add_vertex(at(1), 0, std::nullopt, Role::Goal);
  g.add_edge(s, t, 0, EdgeKind::Gait, ConditionLevel::SufficientMet, 1.0);
  EXPECT_EQ(g.live_subgraph_count(), 1u);
  for (VertexId v : {s, t}) {
    EXPECT_TRUE(g.upstream_from_goal(v));
    EXPECT_TRUE(g.downstream_from_start(v));
  }
}

TEST(Graph, LargerSubgraphSurvivesMerge) {
  PossibilityGraph g;
  const VertexId a = g.add_vertex(at(0), 0);
  const SubgraphId big = g.vertex(a).subgraph;
  const VertexId b = g.add_vertex(at(1), 0, big);
  const VertexId c = g.add_vertex(at(2), 0);
  g.add_edge(c, b, 0, EdgeKind::Gait, ConditionLevel::SufficientMet, 1.0);
  EXPECT_EQ(g.vertex(c).subgraph, big);
  (void)a;
}

TEST(Graph, InvalidEdges) {
  PossibilityGraph g;
  const VertexId a = g.add_vertex(at(0), 0);
  EXPECT_THROW(g.add_edge(a, a, 0, EdgeKind::Gait, ConditionLevel::SufficientMet, 1.0), GraphError);
  EXPECT_THROW(g.add_edge(a, vid(7), 0, EdgeKind::Gait, ConditionLevel::SufficientMet, 1.0), GraphError);
  const VertexId b = g.add_vertex(at(1), 0);
  EXPECT_THROW(g.add_edge(a, b, 0, EdgeKind::Gait, ConditionLevel::Refuted, 1.0), GraphError);
  EXPECT_THROW(g.add_edge(a, b, 0, EdgeKind::Gait, ConditionLevel::SufficientMet, -1.0), GraphError);
  EXPECT_THROW(g.remove_edge(EdgeId{3}), GraphError);
}

TEST(Graph, ChainIsOneSubgraph) {
  PossibilityGraph g;
  const int n = 25;
  g.add_vertex(at(0), 0);
  for (int i = 1; i <= n; ++i) {
    g.add_vertex(at(i), 0);
    g.add_edge(vid(i - 1), vid(i), 0, EdgeKind::Gait, ConditionLevel::SufficientMet, 1.0);
  }
  EXPECT_EQ(g.live_subgraph_count(), 1u);
  EXPECT_EQ(g.subgraph(g.vertex(vid(0)).subgraph).members.size(), static_cast<std::size_t>(n + 1));
  expect_partition(g);
}

TEST(Graph, ConnectedIsDirected) {
  PossibilityGraph g;
  const VertexId s = g.add_vertex(at(0), 0), t = g.add_vertex(at(1), 0);
  EXPECT_FALSE(g.connected(s, t));
  g.add_edge(t, s, 0, EdgeKind::Gait, ConditionLevel::SufficientMet, 1.0);
  EXPECT_FALSE(g.connected(s, t));
  EXPECT_TRUE(g.connected(t, s));
  g.add_edge(s, t, 0, EdgeKind::Gait, ConditionLevel::SufficientMet, 1.0);
  EXPECT_TRUE(g.connected(s, t));
}

TEST(Graph, ShortestPathBasics) {
  PossibilityGraph g;
  const VertexId s = g.add_vertex(at(0), 0), m = g.add_vertex(at(1), 0), n = g.add_vertex(at(2), 0),
                 t = g.add_vertex(at(3), 0);
  EXPECT_THROW(g.shortest_path(s, t), GraphError);
  const EdgeId direct = g.add_edge(s, t, 0, EdgeKind::Gait, ConditionLevel::SufficientMet, 5.0);
  EXPECT_EQ(g.shortest_path(s, t), std::vector<EdgeId>{direct});
  const EdgeId e1 = g.add_edge(s, m, 0, EdgeKind::Gait, ConditionLevel::SufficientMet, 1.0);
  const EdgeId e2 = g.add_edge(m, t, 0, EdgeKind::Gait, ConditionLevel::SufficientMet, 2.0);
  g.add_edge(s, n, 0, EdgeKind::Gait, ConditionLevel::SufficientMet, 2.0);
  g.add_edge(n, t, 0, EdgeKind::Gait, ConditionLevel::SufficientMet, 1.0);
  // Two routes of weight 3 beat the direct edge; the smaller edge-id sequence wins.
  EXPECT_EQ(g.shortest_path(s, t), (std::vector<EdgeId>{e1, e2}));
}

TEST(Graph, RemoveAndReinstate) {
  PossibilityGraph g;
  const VertexId s = g.add_vertex(at(0), 0), t = g.add_vertex(at(1), 0);
  const EdgeId e = g.add_edge(s, t, 0, EdgeKind::Jump, ConditionLevel::NecessaryOnly, 1.0);
  g.remove_edge(e);
  EXPECT_FALSE(g.connected(s, t));
  EXPECT_EQ(g.active_edge_count(), 0u);
  g.mark_edge(e, ConditionLevel::Confirmed);
  EXPECT_TRUE(g.connected(s, t));
  EXPECT_EQ(g.edge(e).level, ConditionLevel::Confirmed);
  EXPECT_THROW(g.mark_edge(e, ConditionLevel::Refuted), GraphError);  // only NecessaryOnly edges resolve
}

TEST(Graph, RefutedEdgesAreRemembered) {
  PossibilityGraph g;
  const VertexId s = g.add_vertex(at(0), 0), t = g.add_vertex(at(1), 0);
  const EdgeId e = g.add_edge(s, t, 2, EdgeKind::Jump, ConditionLevel::NecessaryOnly, 1.0);
  EXPECT_FALSE(g.is_refuted(2, at(0), at(1)));
  g.mark_edge(e, ConditionLevel::Refuted);
  EXPECT_FALSE(g.connected(s, t));
  EXPECT_TRUE(g.is_refuted(2, at(0), at(1)));
  EXPECT_TRUE(g.is_refuted(2, at(0.01), at(1.01)));  // same quantisation cell
  EXPECT_FALSE(g.is_refuted(1, at(0), at(1)));
  EXPECT_FALSE(g.is_refuted(2, at(1), at(0)));
}

TEST(Graph, PossibilityOfLevels) {
  EXPECT_EQ(possibility_of(ConditionLevel::SufficientMet), PossibilityStatus::Possible);
  EXPECT_EQ(possibility_of(ConditionLevel::Confirmed), PossibilityStatus::Possible);
  EXPECT_EQ(possibility_of(ConditionLevel::NecessaryOnly), PossibilityStatus::Indeterminate);
  EXPECT_EQ(possibility_of(ConditionLevel::Refuted), PossibilityStatus::Impossible);
  for (auto level : {ConditionLevel::SufficientMet, ConditionLevel::NecessaryOnly, ConditionLevel::Confirmed,
                     ConditionLevel::Refuted}) {
    EXPECT_EQ(condition_level_from_string(to_string(level)), level);
  }
}

TEST(Graph, ConnectedMatchesDfsOracle) {
  std::mt19937_64 rng(101);
  for (int c = 0; c < 1000; ++c) {
    RandomGraph r = random_graph(rng, false);
    std::uniform_int_distribution<int> pick(0, r.n - 1);
    const int s = pick(rng), t = pick(rng);
    ASSERT_EQ(r.graph.connected(vid(s), vid(t)), oracle::reachable(r.n, r.edges, s, t)) << "case " << c;
  }
}

TEST(Graph, ShortestPathMatchesEnumerationOnDags) {
  std::mt19937_64 rng(202);
  int connected = 0;
  for (int c = 0; c < 1000; ++c) {
    RandomGraph r = random_graph(rng, true);
    const int s = 0, t = r.n - 1;
    const auto expected = oracle::brute_shortest(r.n, r.edges, s, t);
    ASSERT_EQ(r.graph.connected(vid(s), vid(t)), expected.has_value()) << "case " << c;
    if (!expected) continue;
    ++connected;
    std::vector<int> got;
    double w = 0.0;
    for (EdgeId e : r.graph.shortest_path(vid(s), vid(t))) {
      got.push_back(static_cast<int>(e.value));
      w += r.graph.edge(e).weight;
    }
    ASSERT_DOUBLE_EQ(w, expected->weight) << "case " << c;
    ASSERT_EQ(got, expected->edges) << "case " << c;
  }
  EXPECT_GT(connected, 200);
}

TEST(Graph, ShortestPathMatchesEnumerationWithCycles) {
  std::mt19937_64 rng(303);
  for (int c = 0; c < 1000; ++c) {
    RandomGraph r = random_graph(rng, false);
    std::uniform_int_distribution<int> pick(0, r.n - 1);
    const int s = pick(rng), t = pick(rng);
    if (s == t) continue;
    const auto expected = oracle::brute_shortest(r.n, r.edges, s, t);
    if (!expected) continue;
    std::vector<int> got;
    for (EdgeId e : r.graph.shortest_path(vid(s), vid(t))) got.push_back(static_cast<int>(e.value));
    ASSERT_EQ(got, expected->edges) << "case " << c;
  }
}

TEST(Graph, RemovalsMatchOracle) {
  std::mt19937_64 rng(404);
  for (int c = 0; c < 300; ++c) {
    RandomGraph r = random_graph(rng, false);
    if (r.edges.empty()) continue;
    std::uniform_int_distribution<int> pick_edge(0, static_cast<int>(r.edges.size()) - 1);
    const int k = std::uniform_int_distribution<int>(1, static_cast<int>(r.edges.size()))(rng);
    for (int i = 0; i < k; ++i) {
      const int e = pick_edge(rng);
      if (r.edges[e].removed) continue;
      r.edges[e].removed = true;
      r.graph.remove_edge(EdgeId{static_cast<std::uint32_t>(e)});
    }
    for (int s = 0; s < r.n; ++s) {
      for (int t = 0; t < r.n; ++t) {
        ASSERT_EQ(r.graph.connected(vid(s), vid(t)), oracle::reachable(r.n, r.edges, s, t));
      }
    }
    expect_partition(r.graph);
  }
}

TEST(Graph, MasksMatchReachability) {
  std::mt19937_64 rng(505);
  for (int c = 0; c < 200; ++c) {
    RandomGraph r = random_graph(rng, false);
    const int v = std::uniform_int_distribution<int>(0, r.n - 1)(rng);
    const auto down = r.graph.downstream_mask(vid(v));
    const auto up = r.graph.upstream_mask(vid(v));
    for (int u = 0; u < r.n; ++u) {
      EXPECT_EQ(down[u], oracle::reachable(r.n, r.edges, v, u));
      EXPECT_EQ(up[u], oracle::reachable(r.n, r.edges, u, v));
    }
  }
}

TEST(Graph, ClosestVertexMatchesLinearScan) {
  std::mt19937_64 rng(606);
  std::uniform_real_distribution<double> u(0, 10), yaw(-3, 3);
  PossibilityGraph g;
  const VertexId first = g.add_vertex(at(u(rng), u(rng), yaw(rng)), 0);
  const SubgraphId sub = g.vertex(first).subgraph;
  for (int i = 1; i < 100; ++i) g.add_vertex(at(u(rng), u(rng), yaw(rng)), i % 2, sub);
  for (int q = 0; q < 50; ++q) {
    const Pose target = at(u(rng), u(rng), yaw(rng));
    std::uint32_t best = 0;
    for (std::uint32_t i = 1; i < 100; ++i) {
      if (pose_distance(g.vertex(vid(i)).pose, target, 0.5) < pose_distance(g.vertex(vid(best)).pose, target, 0.5)) {
        best = i;
      }
    }
    EXPECT_EQ(g.closest_vertex(sub, target, 0.5).value, best);
    const VertexId odd = g.closest_vertex(sub, target, 0.5, [](const Vertex& v) { return v.action == 1; });
    EXPECT_EQ(g.vertex(odd).action, 1);
  }
  EXPECT_EQ(g.closest_vertex(sub, g.vertex(vid(42)).pose, 0.5).value, 42u);
}

TEST(Graph, ClosestVertexTieGoesToSmallestId) {
  PossibilityGraph g;
  const VertexId a = g.add_vertex(at(-1), 0);
  g.add_vertex(at(1), 0, g.vertex(a).subgraph);
  EXPECT_EQ(g.closest_vertex(g.vertex(a).subgraph, at(0), 0.5), a);
}

TEST(Graph, FlagsNeverDrop) {
  std::mt19937_64 rng(707);
  PossibilityGraph g;
  g.add_vertex(at(0), 0, std::nullopt, Role::Start);
  g.add_vertex(at(1), 0, std::nullopt, Role::Goal);
  for (int i = 2; i < 40; ++i) g.add_vertex(at(i), 0);
  std::uniform_int_distribution<int> pick(0, 39);
  for (int k = 0; k < 80; ++k) {
    const int a = pick(rng), b = pick(rng);
    if (a == b) continue;
    const bool start_before = g.downstream_from_start(vid(a)) || g.downstream_from_start(vid(b));
    const bool goal_before = g.upstream_from_goal(vid(a)) || g.upstream_from_goal(vid(b));
    g.add_edge(vid(a), vid(b), 0, EdgeKind::Gait, ConditionLevel::SufficientMet, 1.0);
    EXPECT_EQ(g.downstream_from_start(vid(a)), start_before);
    EXPECT_EQ(g.upstream_from_goal(vid(a)), goal_before);
    expect_partition(g);
  }
}
