#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "pgraph/confirmation.hpp"
#include "pgraph/graph.hpp"

namespace pgraph {

/// Writes the append-only event log, one JSON object per line. Every record carries a
/// sequence number and the planner clock (the outer-loop iteration count), so inline
/// runs produce byte-identical logs for a fixed seed.
class TraceWriter : public GraphObserver {
 public:
  TraceWriter(std::ostream& out, std::vector<std::string> action_names, bool record_timing);

  void set_clock(std::uint64_t clock) { clock_ = clock; }

  void on_vertex_added(const Vertex& v) override;
  void on_edge_added(const Edge& e) override;
  void on_subgraphs_merged(SubgraphId into, SubgraphId from) override;
  void on_edge_removed(const Edge& e) override;
  void on_edge_marked(const Edge& e) override;

  void job_spawned(JobId job, EdgeId edge);
  void job_resolved(const Verdict& verdict);
  void solution_found(std::size_t goal_index, const std::vector<EdgeId>& edges, double total_weight);

  std::uint64_t records() const { return seq_; }

 private:
  template <typename Json>
  void emit(const char* event, Json&& body);

  std::ostream& out_;
  std::vector<std::string> action_names_;
  bool record_timing_;
  std::uint64_t seq_ = 0;
  std::uint64_t clock_ = 0;
};

class TraceError : public std::runtime_error {
 public:
  TraceError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct TraceVertex {
  std::uint32_t id = 0;
  std::string action;
  Pose pose;
};

struct TraceEdge {
  std::uint32_t id = 0;
  std::uint32_t from = 0;
  std::uint32_t to = 0;
  std::string action;
  EdgeKind kind = EdgeKind::Gait;
  std::optional<BallisticArc> arc;
  bool removed = false;
};

/// Graph and solution reassembled from a trace.
struct TraceSummary {
  std::vector<TraceVertex> vertices;
  std::vector<TraceEdge> edges;
  std::vector<std::uint32_t> solution;
  std::size_t records = 0;
};

/// Parses a trace; throws TraceError naming the first malformed record (1-based line).
TraceSummary read_trace(std::istream& in);

}  // namespace pgraph
