// Acceptance checks, one PASS/FAIL line per criterion. Pass criterion numbers as
// arguments to run a subset; exit status is non-zero when any selected check fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "pgraph/planner.hpp"
#include "pgraph/takeoff.hpp"

using namespace pgraph;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// One planned trial with everything the criteria look at.
struct Trial {
  bool solved = false;
  bool valid = false;
  double graph_time = 0.0;
  int crawl_edges = 0;
  int jump_edges = 0;
  int confirmed_jump_edges = 0;
  std::vector<std::string> problems;
};

Trial run_trial(Scenario s, std::uint64_t seed) {
  s.planner.rng_seed = seed;
  Planner p(std::move(s));
  const auto solution = p.run();
  Trial t;
  t.graph_time = p.summary().graph_time_s;
  if (!solution) return t;
  t.solved = true;
  std::vector<std::string> names;
  for (auto& a : p.actions()) names.push_back(a->name());
  t.problems = validate_solution(p.scenario(), p.graph(), names, p.start(), p.goals(), *solution);
  t.valid = t.problems.empty();
  for (std::size_t i = 0; i < solution->edges.size(); ++i) {
    const Edge& e = p.graph().edge(solution->edges[i]);
    const std::string& name = names.at(e.action);
    if (name == kCrawl && e.kind == EdgeKind::Gait) ++t.crawl_edges;
    if (e.kind == EdgeKind::Jump) {
      ++t.jump_edges;
      if (solution->levels[i] == ConditionLevel::Confirmed) ++t.confirmed_jump_edges;
    }
  }
  return t;
}

constexpr int kTrials = 50;

// Trials per builtin, shared by criteria 2, 3 and 5.
const std::map<std::string, std::vector<Trial>>& builtin_trials() {
  static const auto trials = [] {
    std::map<std::string, std::vector<Trial>> out;
    for (const std::string& name : builtin_scenario_names()) {
      Scenario s = builtin_scenario(name);
      s.planner.time_limit = 60.0;
      for (int i = 0; i < kTrials; ++i) out[name].push_back(run_trial(s, 1000 + i));
    }
    return out;
  }();
  return trials;
}

// three_routes_a graph times for 1, 2 and 3 enabled actions, shared by criteria 4 and 10.
const std::vector<std::vector<double>>& scaling_times() {
  static const auto times = [] {
    const std::vector<std::vector<std::string>> sets = {{"walk"}, {"walk", "crawl"}, {"walk", "crawl", "jump"}};
    std::vector<Scenario> scenarios;
    for (const auto& set : sets) {
      scenarios.push_back(builtin_scenario("three_routes_a"));
      scenarios.back().enabled_actions = set;
    }
    // Interleaved so clock drift and cache state hit every set alike; one warm-up each.
    for (const Scenario& s : scenarios) run_trial(s, 1);
    std::vector<std::vector<double>> out(sets.size());
    for (int i = 0; i < kTrials; ++i) {
      for (std::size_t k = 0; k < scenarios.size(); ++k) {
        const Trial trial = run_trial(scenarios[k], 2000 + i);
        if (trial.solved) out[k].push_back(trial.graph_time);
      }
    }
    return out;
  }();
  return times;
}

double mean(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

double standard_error(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean(v);
  double ss = 0;
  for (double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(v.size() - 1)) / std::sqrt(static_cast<double>(v.size()));
}

// Near-nominal posture samples: uniform (x, y, yaw) over the sampling bounds, height
// and pitch either exactly nominal over the slab below or jittered around it.
Outcome criterion_1() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> unit(0.0, 1.0), jitter(-0.05, 0.05);
  std::size_t violations = 0, sufficient = 0, total = 0;
  std::string where;
  for (const std::string& name : builtin_scenario_names()) {
    Scenario s = builtin_scenario(name);
    s.planner.workers = 0;
    Planner p(s);
    const SamplingBounds& b = p.scenario().sampling_bounds;
    for (const char* gait_name : {kWalk.data(), kCrawl.data()}) {
      const GaitAction* gait = p.actions().gait(gait_name);
      const GaitSpec& spec = gait->spec();
      for (int i = 0; i < 100000; ++i) {
        const double x = b.x.lo + unit(rng) * (b.x.hi - b.x.lo);
        const double y = b.y.lo + unit(rng) * (b.y.hi - b.y.lo);
        const double yaw = -std::numbers::pi + 2 * std::numbers::pi * unit(rng);
        double ground = 0.0;
        try {
          if (auto k = slab_index_under(p.scenario().environment, x, y)) ground = p.scenario().environment.slabs[*k].top_height;
        } catch (const AmbiguousSupportError&) {
        }
        const bool exact = unit(rng) < 0.5;
        const double z = ground + spec.hip_height + (exact ? 0.0 : jitter(rng));
        const double pitch = spec.nominal_pitch + (exact ? 0.0 : jitter(rng));
        const double roll = exact ? 0.0 : jitter(rng);
        const Pose pose = Pose::from_xyz_rpy({x, y, z}, roll, pitch, yaw);
        const bool cs = gait->sufficient(pose);
        ++total;
        if (cs) ++sufficient;
        if (cs && !gait->necessary(pose)) {
          ++violations;
          where = name + "/" + gait_name;
        }
      }
    }
  }
  const double elapsed = seconds_since(t0);
  return {violations == 0 && elapsed < 30.0 && sufficient > 0,
          fmt("%zu samples, %zu sufficient, %zu violations%s%s, %.1f s", total, sufficient, violations,
              where.empty() ? "" : " last at ", where.c_str(), elapsed)};
}

Outcome criterion_2() {
  std::size_t returned = 0, valid = 0;
  std::string first_problem;
  for (const auto& [name, trials] : builtin_trials()) {
    for (const Trial& t : trials) {
      if (!t.solved) continue;
      ++returned;
      if (t.valid) ++valid;
      else if (first_problem.empty()) first_problem = name + ": " + t.problems.front();
    }
  }
  return {returned > 0 && valid == returned,
          fmt("%zu/%zu returned paths valid%s%s", valid, returned, first_problem.empty() ? "" : "; ", first_problem.c_str())};
}

Outcome criterion_3() {
  bool pass = true;
  std::string detail;
  for (const auto& [name, trials] : builtin_trials()) {
    int ok = 0;
    for (const Trial& t : trials) ok += t.solved ? 1 : 0;
    const double rate = static_cast<double>(ok) / static_cast<double>(trials.size());
    const double needed = name == "hallway" ? 0.9 : 1.0;
    pass = pass && rate >= needed;
    detail += fmt("%s %.0f%% ", name.c_str(), 100.0 * rate);
  }
  return {pass, detail};
}

Outcome criterion_4() {
  const auto& times = scaling_times();
  bool pass = true;
  std::string detail;
  for (std::size_t k = 0; k < times.size(); ++k) {
    detail += fmt("%zu action%s %.4f +- %.4f s (n=%zu) ", k + 1, k ? "s" : "", mean(times[k]), standard_error(times[k]),
                  times[k].size());
    pass = pass && times[k].size() == static_cast<std::size_t>(kTrials);
    if (k > 0) {
      const double pooled = std::hypot(standard_error(times[k - 1]), standard_error(times[k]));
      pass = pass && mean(times[k - 1]) <= mean(times[k]) + pooled;
    }
  }
  return {pass, detail};
}

Outcome criterion_5() {
  const auto& all = builtin_trials();
  int b_crawl = 0;
  for (const Trial& t : all.at("three_routes_b")) b_crawl += t.solved && t.crawl_edges >= 1 ? 1 : 0;
  bool pass = b_crawl == kTrials;
  std::string detail = fmt("three_routes_b crawl %d/%d; ", b_crawl, kTrials);
  for (const char* name : {"three_routes_c", "hallway", "double_jump"}) {
    const std::size_t need = std::string(name) == "double_jump" ? 2 : 1;
    int solved = 0, good = 0;
    for (const Trial& t : all.at(name)) {
      if (!t.solved) continue;
      ++solved;
      if (static_cast<std::size_t>(t.confirmed_jump_edges) >= need) ++good;
    }
    pass = pass && solved > 0 && good == solved;
    detail += fmt("%s jump>=%zu %d/%d; ", name, need, good, solved);
  }
  return {pass, detail};
}

Outcome criterion_6() {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> dist(0.2, 2.0), dz(-1.0, 0.5), theta(20.0, 75.0), dir(-3.14159, 3.14159);
  int feasible = 0, within = 0;
  double worst = 0.0;
  while (feasible < 1000) {
    const double d = dist(rng), h = dz(rng), th = theta(rng) * std::numbers::pi / 180.0, phi = dir(rng);
    const Eigen::Vector3d p0(0.3, -0.2, 1.0);
    const Eigen::Vector3d p1 = p0 + Eigen::Vector3d(d * std::cos(phi), d * std::sin(phi), h);
    const auto arc = parabola_for(p0, p1, th, 9.81);
    if (!arc) continue;
    ++feasible;
    const double vh = arc->launch_speed * std::cos(arc->launch_angle), vz = arc->launch_speed * std::sin(arc->launch_angle);
    const auto z = oracle::integrate_height_at(vh, vz, p0.z(), d, 9.81, 1e-4);
    const double err = z ? std::abs(*z - p1.z()) : 1e9;
    worst = std::max(worst, err);
    if (err <= 1e-3) ++within;
  }
  return {within == feasible, fmt("%d/%d within 1e-3 m, worst %.2e m", within, feasible, worst)};
}

Outcome criterion_7() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> pos(-0.5, 0.5), vel(-4.0, 4.0), dur(0.1, 2.0);
  double worst_boundary = 0.0, worst_cost = 0.0, worst_grad = 0.0;
  int bad = 0;
  for (int i = 0; i < 1000; ++i) {
    TakeoffBVP bvp;
    bvp.start = {pos(rng), pos(rng), pos(rng)};
    bvp.takeoff = {pos(rng), pos(rng), pos(rng)};
    bvp.takeoff_velocity = {vel(rng), vel(rng), vel(rng)};
    const double T = dur(rng);
    const TakeoffTrajectory traj = min_accel_trajectory(bvp, T);
    double ref_cost = 0.0, boundary = 0.0;
    for (int axis = 0; axis < 3; ++axis) {
      const auto ref = oracle::collocate_min_accel(bvp.start[axis], bvp.takeoff[axis], bvp.takeoff_velocity[axis], T, 40);
      ref_cost += ref.cost;
      boundary = std::max({boundary, std::abs(traj.trajectory.position(0)[axis] - ref.x_start),
                           std::abs(traj.trajectory.velocity(0)[axis] - ref.v_start),
                           std::abs(traj.trajectory.position(T)[axis] - ref.x_end),
                           std::abs(traj.trajectory.velocity(T)[axis] - ref.v_end)});
    }
    const double cost_err = std::abs(traj.cost - ref_cost) / std::max(ref_cost, 1e-9);
    const double h = 1e-6 * T;
    const double fd = (min_accel_trajectory(bvp, T + h).cost - min_accel_trajectory(bvp, T - h).cost) / (2 * h);
    const double grad_err = std::abs(min_accel_cost_derivative(bvp, T) - fd) / std::max(1.0, std::abs(fd));
    worst_boundary = std::max(worst_boundary, boundary);
    worst_cost = std::max(worst_cost, cost_err);
    worst_grad = std::max(worst_grad, grad_err);
    if (boundary > 1e-6 || cost_err > 0.01 || grad_err > 1e-4) ++bad;
  }
  return {bad == 0, fmt("%d/1000 off; worst boundary %.1e, cost %.2e rel, dcost/dT %.1e rel", bad, worst_boundary,
                        worst_cost, worst_grad)};
}

Outcome criterion_8() {
  std::mt19937_64 rng(8);
  int mismatches = 0, connected_cases = 0;
  for (int c = 0; c < 1000; ++c) {
    PossibilityGraph g;
    const int n = std::uniform_int_distribution<int>(2, 10)(rng);
    for (int i = 0; i < n; ++i) g.add_vertex(Pose::from_xyz_rpy({double(i), 0, 0}, 0, 0, 0), 0);
    std::vector<oracle::SmallEdge> edges;
    const int m = std::uniform_int_distribution<int>(0, 3 * n)(rng);
    std::uniform_int_distribution<int> pick(0, n - 1);
    std::uniform_real_distribution<double> weight(0.1, 5.0);
    for (int k = 0; k < m; ++k) {
      const int a = pick(rng), b = pick(rng);
      if (a == b) continue;
      const double w = weight(rng);
      g.add_edge(VertexId{std::uint32_t(a)}, VertexId{std::uint32_t(b)}, 0, EdgeKind::Gait, ConditionLevel::SufficientMet, w);
      edges.push_back({a, b, w, false});
    }
    for (auto& e : edges) {
      if (std::bernoulli_distribution(0.15)(rng)) {
        e.removed = true;
        g.remove_edge(EdgeId{std::uint32_t(&e - edges.data())});
      }
    }
    const int s = pick(rng), t = pick(rng);
    const VertexId vs{std::uint32_t(s)}, vt{std::uint32_t(t)};
    const bool expect = oracle::reachable(n, edges, s, t);
    if (g.connected(vs, vt) != expect) {
      ++mismatches;
      continue;
    }
    if (!expect || s == t) continue;
    ++connected_cases;
    const auto best = oracle::brute_shortest(n, edges, s, t);
    const auto path = g.shortest_path(vs, vt);
    double w = 0.0;
    int at = s;
    bool contiguous = !path.empty();
    for (EdgeId e : path) {
      const auto& ref = edges.at(e.value);
      contiguous = contiguous && !ref.removed && ref.from == at;
      at = ref.to;
      w += ref.weight;
    }
    if (!best || !contiguous || at != t || std::abs(w - best->weight) > 1e-9) ++mismatches;
  }
  return {mismatches == 0, fmt("%d mismatches over 1000 graphs (%d with a path)", mismatches, connected_cases)};
}

Outcome criterion_9() {
  bool pass = true;
  std::string detail;
  for (const std::string& name : builtin_scenario_names()) {
    Scenario s = builtin_scenario(name);
    s.planner.workers = 0;
    s.planner.rng_seed = 42;
    std::set<std::string> traces;
    std::size_t bytes = 0;
    for (int i = 0; i < 5; ++i) {
      std::ostringstream out;
      find_path(s, &out);
      bytes = out.str().size();
      traces.insert(out.str());
    }
    pass = pass && traces.size() == 1 && bytes > 0;
    detail += fmt("%s %zu distinct (%zu B) ", name.c_str(), traces.size(), bytes);
  }
  return {pass, detail};
}

Outcome criterion_10() {
  const auto& times = scaling_times();
  const double m = mean(times[2]);
  return {times[2].size() == static_cast<std::size_t>(kTrials) && m < 2.0,
          fmt("three_routes_a, 3 actions: mean %.4f s over %zu solved", m, times[2].size())};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"sufficient implies necessary on sampled poses", criterion_1},
      {"every returned path passes the validator", criterion_2},
      {"success rates within the time limit", criterion_3},
      {"graph time non-decreasing in action count", criterion_4},
      {"routes use the expected actions", criterion_5},
      {"launch solution lands on target under integration", criterion_6},
      {"take-off cubic matches collocation; dcost/dT matches differences", criterion_7},
      {"graph search matches exhaustive enumeration", criterion_8},
      {"inline seeded traces are byte-identical", criterion_9},
      {"three-action graph time on three_routes_a under 2 s", criterion_10},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!selected.empty() && !selected.count(id)) continue;
    const auto t0 = Clock::now();
    const Outcome o = criteria[i].second();
    std::printf("[%s] criterion %d: %s | %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", id, criteria[i].first,
                o.detail.c_str(), seconds_since(t0));
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
