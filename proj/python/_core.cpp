#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pgraph/bench.hpp"
#include "pgraph/geometry.hpp"
#include "pgraph/planner.hpp"
#include "pgraph/render.hpp"
#include "pgraph/scenario.hpp"
#include "pgraph/takeoff.hpp"
#include "pgraph/trace.hpp"

namespace py = pybind11;
using namespace pgraph;

namespace {

using Vec3 = std::array<double, 3>;
using Pose6 = std::array<double, 6>;  // x, y, z, roll, pitch, yaw

Eigen::Vector3d vec(const Vec3& v) { return {v[0], v[1], v[2]}; }
Vec3 arr(const Eigen::Vector3d& v) { return {v.x(), v.y(), v.z()}; }

Pose pose_of(const Pose6& p) { return Pose::from_xyz_rpy({p[0], p[1], p[2]}, p[3], p[4], p[5]); }
Pose6 tuple_of(const Pose& p) { return {p.x(), p.y(), p.z(), p.roll(), p.pitch(), p.yaw()}; }

py::dict summary_dict(const RunSummary& s) {
  py::dict d;
  d["solved"] = s.solved;
  d["graph_time_s"] = s.graph_time_s;
  d["iterations"] = s.iterations;
  d["vertices"] = s.vertices;
  d["edges"] = s.edges;
  d["jobs_spawned"] = s.jobs_spawned;
  d["jobs_confirmed"] = s.jobs_confirmed;
  d["jobs_refuted"] = s.jobs_refuted;
  return d;
}

py::dict plan(const Scenario& scenario, bool with_trace) {
  std::ostringstream trace;
  Planner planner(scenario, with_trace ? &trace : nullptr);
  std::optional<Solution> solution;
  {
    py::gil_scoped_release release;
    solution = planner.run();
  }
  py::dict out;
  out["summary"] = summary_dict(planner.summary());
  out["solution"] = py::none();
  if (solution) {
    std::vector<std::string> names;
    for (auto& a : planner.actions()) names.push_back(a->name());
    py::list steps;
    for (std::size_t i = 0; i < solution->edges.size(); ++i) {
      const Edge& e = planner.graph().edge(solution->edges[i]);
      py::dict step;
      step["edge"] = e.id.value;
      step["action"] = names.at(e.action);
      step["kind"] = std::string(to_string(e.kind));
      step["level"] = std::string(to_string(solution->levels[i]));
      step["from"] = tuple_of(planner.graph().vertex(e.from).pose);
      step["to"] = tuple_of(planner.graph().vertex(e.to).pose);
      steps.append(step);
    }
    py::dict sol;
    sol["steps"] = steps;
    sol["total_weight"] = solution->total_weight;
    sol["goal_index"] = solution->goal_index;
    sol["problems"] =
        validate_solution(planner.scenario(), planner.graph(), names, planner.start(), planner.goals(), *solution);
    out["solution"] = sol;
  }
  out["trace"] = with_trace ? py::object(py::str(trace.str())) : py::object(py::none());
  return out;
}

py::dict bench(const Scenario& scenario, std::size_t trials, std::uint64_t seed0) {
  BenchReport r;
  {
    py::gil_scoped_release release;
    r = run_bench(scenario, trials, seed0);
  }
  py::dict d;
  d["scenario"] = r.scenario;
  d["action_count"] = r.action_count;
  d["trials"] = r.trials;
  d["success_rate"] = r.success_rate;
  d["graph_time_mean"] = r.graph_time_mean;
  d["graph_time_std"] = r.graph_time_std;
  d["vertices_mean"] = r.vertices_mean;
  d["edges_mean"] = r.edges_mean;
  return d;
}

TraceSummary parse_trace(const std::string& text) {
  std::istringstream in(text);
  return read_trace(in);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Multi-modal motion planning with walk, crawl and standing long jump actions.";

  // Leaked on purpose: the translator may run during interpreter shutdown.
  static py::handle scenario_error = py::exception<ScenarioError>(m, "ScenarioError", PyExc_ValueError).release();
  static py::handle trace_error = py::exception<TraceError>(m, "TraceError", PyExc_ValueError).release();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ScenarioError& e) {
      py::object err = scenario_error(e.what());
      err.attr("field") = e.field();
      PyErr_SetObject(scenario_error.ptr(), err.ptr());
    } catch (const TraceError& e) {
      py::object err = trace_error(e.what());
      err.attr("line") = e.line();
      PyErr_SetObject(trace_error.ptr(), err.ptr());
    }
  });

  py::class_<Scenario>(m, "Scenario")
      .def_static("builtin", &builtin_scenario, py::arg("name"))
      .def_static("from_json", [](const std::string& doc) { return load_scenario(doc); }, py::arg("document"))
      .def_static("from_file", &load_scenario_file, py::arg("path"))
      .def("to_json", &serialize_scenario)
      .def("validate", &validate_scenario)
      .def_readwrite("name", &Scenario::name)
      .def_readwrite("enabled_actions", &Scenario::enabled_actions)
      .def_property(
          "start", [](const Scenario& s) { return tuple_of(s.start); },
          [](Scenario& s, const Pose6& p) { s.start = pose_of(p); })
      .def_property(
          "goals",
          [](const Scenario& s) {
            std::vector<Pose6> out;
            for (const Pose& g : s.goals) out.push_back(tuple_of(g));
            return out;
          },
          [](Scenario& s, const std::vector<Pose6>& goals) {
            s.goals.clear();
            for (const Pose6& g : goals) s.goals.push_back(pose_of(g));
          })
      .def_property(
          "seed", [](const Scenario& s) { return s.planner.rng_seed; },
          [](Scenario& s, std::uint64_t v) { s.planner.rng_seed = v; })
      .def_property(
          "time_limit", [](const Scenario& s) { return s.planner.time_limit; },
          [](Scenario& s, double v) { s.planner.time_limit = v; })
      .def_property(
          "workers", [](const Scenario& s) { return s.planner.workers; },
          [](Scenario& s, int v) { s.planner.workers = v; })
      .def_property(
          "jump_skip_probability", [](const Scenario& s) { return s.planner.jump_skip_probability; },
          [](Scenario& s, double v) { s.planner.jump_skip_probability = v; })
      .def("__repr__", [](const Scenario& s) { return "<Scenario " + s.name + ">"; });

  m.def("builtin_names", &builtin_scenario_names);
  m.def("plan", &plan, py::arg("scenario"), py::arg("trace") = false,
        "Plan once. Returns {'summary', 'solution', 'trace'}; solution is None on timeout.");
  m.def("bench", &bench, py::arg("scenario"), py::arg("trials"), py::arg("seed0") = 0);

  m.def(
      "read_trace",
      [](const std::string& text) {
        const TraceSummary t = parse_trace(text);
        py::dict d;
        d["records"] = t.records;
        d["vertices"] = t.vertices.size();
        d["edges"] = t.edges.size();
        d["solution"] = t.solution;
        py::dict kinds;
        for (std::uint32_t id : t.solution) {
          const std::string k(to_string(t.edges.at(id).kind));
          kinds[py::str(k)] = kinds.contains(k) ? kinds[py::str(k)].cast<int>() + 1 : 1;
        }
        d["solution_kinds"] = kinds;
        return d;
      },
      py::arg("text"));
  m.def(
      "render_svg",
      [](const Scenario& s, std::optional<std::string> trace) {
        return render_svg(s, trace ? parse_trace(*trace) : TraceSummary{});
      },
      py::arg("scenario"), py::arg("trace") = py::none());

  m.def(
      "pose_distance", [](const Pose6& a, const Pose6& b, double w) { return pose_distance(pose_of(a), pose_of(b), w); },
      py::arg("a"), py::arg("b"), py::arg("rotation_weight") = 0.5);
  m.def(
      "parabola_for",
      [](const Vec3& p0, const Vec3& p1, double theta, double gravity) -> std::optional<py::dict> {
        const auto arc = parabola_for(vec(p0), vec(p1), theta, gravity);
        if (!arc) return std::nullopt;
        py::dict d;
        d["launch_speed"] = arc->launch_speed;
        d["launch_angle"] = arc->launch_angle;
        d["flight_time"] = arc->flight_time;
        d["length"] = arc->length();
        return d;
      },
      py::arg("p0"), py::arg("p1"), py::arg("theta"), py::arg("gravity") = 9.81);
  m.def(
      "min_accel_trajectory",
      [](const Vec3& start, const Vec3& takeoff, const Vec3& velocity, double duration) {
        TakeoffBVP bvp;
        bvp.start = vec(start);
        bvp.takeoff = vec(takeoff);
        bvp.takeoff_velocity = vec(velocity);
        const TakeoffTrajectory t = min_accel_trajectory(bvp, duration);
        py::dict d;
        d["cost"] = t.cost;
        d["dcost_dT"] = min_accel_cost_derivative(bvp, duration);
        d["peak_accel"] = t.peak_accel;
        std::vector<Vec3> coeffs;
        for (const auto& c : t.trajectory.coefficients) coeffs.push_back(arr(c));
        d["coefficients"] = coeffs;
        return d;
      },
      py::arg("start"), py::arg("takeoff"), py::arg("velocity"), py::arg("duration"));
}
