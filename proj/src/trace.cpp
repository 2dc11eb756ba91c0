#include "pgraph/trace.hpp"

#include <nlohmann/json.hpp>

namespace pgraph {

using nlohmann::json;

namespace {

json pose_json(const Pose& p) {
  const Eigen::Vector3d rpy = p.rpy();
  return {{"xyz", {p.x(), p.y(), p.z()}}, {"rpy", {rpy.x(), rpy.y(), rpy.z()}}};
}

json arc_json(const BallisticArc& a) {
  return {{"origin", {a.origin.x(), a.origin.y(), a.origin.z()}},
          {"direction", {a.direction_xy.x(), a.direction_xy.y()}},
          {"speed", a.launch_speed},
          {"angle", a.launch_angle},
          {"time", a.flight_time},
          {"gravity", a.gravity}};
}

}  // namespace

TraceWriter::TraceWriter(std::ostream& out, std::vector<std::string> action_names, bool record_timing)
    : out_(out), action_names_(std::move(action_names)), record_timing_(record_timing) {}

template <typename Json>
void TraceWriter::emit(const char* event, Json&& body) {
  json record = {{"seq", seq_++}, {"clock", clock_}, {"event", event}};
  record.update(std::forward<Json>(body));
  out_ << record.dump() << '\n';
}

void TraceWriter::on_vertex_added(const Vertex& v) {
  json body = {{"vertex", v.id.value},
               {"action", action_names_.at(v.action)},
               {"subgraph", v.subgraph.value},
               {"pose", pose_json(v.pose)}};
  if (v.origin) body["origin"] = v.origin->value;
  emit("vertex_added", std::move(body));
}

void TraceWriter::on_edge_added(const Edge& e) {
  json body = {{"edge", e.id.value},
               {"from", e.from.value},
               {"to", e.to.value},
               {"action", action_names_.at(e.action)},
               {"kind", to_string(e.kind)},
               {"level", to_string(e.level)},
               {"weight", e.weight}};
  if (const auto* jump = std::get_if<JumpPayload>(&e.payload)) {
    body["theta"] = jump->theta;
    body["arc"] = arc_json(jump->arc);
  }
  emit("edge_added", std::move(body));
}

void TraceWriter::on_subgraphs_merged(SubgraphId into, SubgraphId from) {
  emit("subgraphs_merged", json{{"into", into.value}, {"from", from.value}});
}

void TraceWriter::on_edge_removed(const Edge& e) { emit("edge_removed", json{{"edge", e.id.value}}); }

void TraceWriter::on_edge_marked(const Edge& e) {
  emit("edge_marked", json{{"edge", e.id.value}, {"level", to_string(e.level)}});
}

void TraceWriter::job_spawned(JobId job, EdgeId edge) {
  emit("job_spawned", json{{"job", job}, {"edge", edge.value}});
}

void TraceWriter::job_resolved(const Verdict& verdict) {
  json body = {{"job", verdict.job},
               {"edge", verdict.edge.value},
               {"verdict", verdict.status == JobStatus::Confirmed ? "confirmed" : "refuted"}};
  if (record_timing_) {
    body["compute_ms"] = verdict.compute_ms;
    body["slices"] = verdict.slices;
  }
  emit("job_resolved", std::move(body));
}

void TraceWriter::solution_found(std::size_t goal_index, const std::vector<EdgeId>& edges, double total_weight) {
  json ids = json::array();
  for (EdgeId e : edges) ids.push_back(e.value);
  emit("solution_found", json{{"goal", goal_index}, {"edges", ids}, {"total_weight", total_weight}});
}

// ---------------------------------------------------------------------------------

TraceError::TraceError(std::size_t line, const std::string& message)
    : std::runtime_error("trace record " + std::to_string(line) + ": " + message), line_(line) {}

namespace {

Eigen::Vector3d vec3(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>()}; }

}  // namespace

TraceSummary read_trace(std::istream& in) {
  TraceSummary summary;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const json r = json::parse(line);
      const std::string event = r.at("event").get<std::string>();
      r.at("seq").get<std::uint64_t>();
      r.at("clock").get<std::uint64_t>();
      if (event == "vertex_added") {
        const auto id = r.at("vertex").get<std::uint32_t>();
        if (id != summary.vertices.size()) throw TraceError(line_no, "vertex ids out of order");
        const json& pose = r.at("pose");
        summary.vertices.push_back(
            {id, r.at("action").get<std::string>(), Pose::from_xyz_rpy(vec3(pose.at("xyz")), vec3(pose.at("rpy")))});
      } else if (event == "edge_added") {
        TraceEdge e;
        e.id = r.at("edge").get<std::uint32_t>();
        if (e.id != summary.edges.size()) throw TraceError(line_no, "edge ids out of order");
        e.from = r.at("from").get<std::uint32_t>();
        e.to = r.at("to").get<std::uint32_t>();
        if (e.from >= summary.vertices.size() || e.to >= summary.vertices.size()) {
          throw TraceError(line_no, "edge references an unknown vertex");
        }
        e.action = r.at("action").get<std::string>();
        e.kind = edge_kind_from_string(r.at("kind").get<std::string>());
        if (r.contains("arc")) {
          const json& a = r.at("arc");
          BallisticArc arc;
          arc.origin = vec3(a.at("origin"));
          arc.direction_xy = {a.at("direction").at(0).get<double>(), a.at("direction").at(1).get<double>()};
          arc.launch_speed = a.at("speed").get<double>();
          arc.launch_angle = a.at("angle").get<double>();
          arc.flight_time = a.at("time").get<double>();
          arc.gravity = a.at("gravity").get<double>();
          e.arc = arc;
        }
        summary.edges.push_back(std::move(e));
      } else if (event == "edge_removed" || event == "edge_marked") {
        const auto id = r.at("edge").get<std::uint32_t>();
        if (id >= summary.edges.size()) throw TraceError(line_no, "unknown edge");
        if (event == "edge_removed") {
          summary.edges[id].removed = true;
        } else {
          const auto level = condition_level_from_string(r.at("level").get<std::string>());
          summary.edges[id].removed = level == ConditionLevel::Refuted;
        }
      } else if (event == "solution_found") {
        summary.solution.clear();
        for (const auto& id : r.at("edges")) {
          const auto e = id.get<std::uint32_t>();
          if (e >= summary.edges.size()) throw TraceError(line_no, "solution references an unknown edge");
          summary.solution.push_back(e);
        }
      } else if (event == "subgraphs_merged" || event == "job_spawned" || event == "job_resolved") {
        // Not needed to rebuild the picture.
      } else {
        throw TraceError(line_no, "unknown event '" + event + "'");
      }
    } catch (const TraceError&) {
      throw;
    } catch (const std::exception& e) {
      throw TraceError(line_no, e.what());
    }
    ++summary.records;
  }
  return summary;
}

}  // namespace pgraph
