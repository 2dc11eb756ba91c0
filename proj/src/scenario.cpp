#include "pgraph/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "pgraph/gait.hpp"

namespace pgraph {
namespace {

using nlohmann::json;

constexpr double kDeg = std::numbers::pi / 180.0;

// ---------------------------------------------------------------------------------
// Reading with field paths

class Reader {
 public:
  Reader(const json& node, std::string path) : node_(node), path_(std::move(path)) {}

  const std::string& path() const { return path_; }
  const json& node() const { return node_; }

  [[noreturn]] void fail(const std::string& message) const { throw ScenarioError(path_, message); }

  Reader at(const std::string& key) const {
    if (!node_.is_object()) fail("expected an object");
    const auto it = node_.find(key);
    if (it == node_.end()) throw ScenarioError(child_path(key), "missing required field");
    return Reader(*it, child_path(key));
  }

  bool has(const std::string& key) const { return node_.is_object() && node_.contains(key); }

  Reader index(std::size_t i) const { return Reader(node_.at(i), path_ + "[" + std::to_string(i) + "]"); }

  std::size_t array_size() const {
    if (!node_.is_array()) fail("expected an array");
    return node_.size();
  }

  void only_keys(std::initializer_list<const char*> allowed) const {
    if (!node_.is_object()) fail("expected an object");
    for (const auto& item : node_.items()) {
      const bool known = std::any_of(allowed.begin(), allowed.end(), [&](const char* k) { return item.key() == k; });
      if (!known) throw ScenarioError(child_path(item.key()), "unknown field");
    }
  }

  double number() const {
    if (!node_.is_number()) fail("expected a number");
    const double v = node_.get<double>();
    if (!std::isfinite(v)) fail("expected a finite number");
    return v;
  }

  std::string string() const {
    if (!node_.is_string()) fail("expected a string");
    return node_.get<std::string>();
  }

  bool boolean() const {
    if (!node_.is_boolean()) fail("expected a boolean");
    return node_.get<bool>();
  }

  std::uint64_t unsigned_integer() const {
    if (!node_.is_number_unsigned() && !(node_.is_number_integer() && node_.get<std::int64_t>() >= 0)) {
      fail("expected a non-negative integer");
    }
    return node_.get<std::uint64_t>();
  }

  int integer() const {
    if (!node_.is_number_integer()) fail("expected an integer");
    return node_.get<int>();
  }

  template <int N>
  Eigen::Matrix<double, N, 1> vector() const {
    if (array_size() != N) fail("expected an array of " + std::to_string(N) + " numbers");
    Eigen::Matrix<double, N, 1> out;
    for (int i = 0; i < N; ++i) out[i] = index(static_cast<std::size_t>(i)).number();
    return out;
  }

 private:
  std::string child_path(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  const json& node_;
  std::string path_;
};

Interval read_interval(const Reader& r) {
  const Eigen::Vector2d v = r.vector<2>();
  if (v.x() > v.y()) r.fail("interval lower bound exceeds upper bound");
  return {v.x(), v.y()};
}

OrientedBox read_box(const Reader& r) {
  r.only_keys({"center", "half_extents", "yaw"});
  OrientedBox box;
  box.center = r.at("center").vector<3>();
  const Reader half = r.at("half_extents");
  box.half_extents = half.vector<3>();
  if ((box.half_extents.array() <= 0.0).any()) half.fail("half extents must be strictly positive");
  box.yaw = r.has("yaw") ? r.at("yaw").number() : 0.0;
  return box;
}

Pose read_pose(const Reader& r) {
  r.only_keys({"xyz", "rpy"});
  return Pose::from_xyz_rpy(r.at("xyz").vector<3>(), r.at("rpy").vector<3>());
}

std::vector<Eigen::Vector2d> read_points(const Reader& r) {
  std::vector<Eigen::Vector2d> points;
  for (std::size_t i = 0; i < r.array_size(); ++i) points.push_back(r.index(i).vector<2>());
  if (points.empty()) r.fail("support point list must not be empty");
  return points;
}

double positive(const Reader& r) {
  const double v = r.number();
  if (!(v > 0.0)) r.fail("must be positive");
  return v;
}

RobotShape read_robot(const Reader& r) {
  r.only_keys({"walk_sweep", "crawl_sweep", "pelvis_box", "jump_sweep", "support_points_walk",
               "support_points_crawl", "hip_height_walk", "hip_height_crawl", "reach_radius", "v_max", "a_max",
               "crawl_pitch", "theta_set", "gravity", "crouch_depth"});
  RobotShape robot = default_robot();
  if (r.has("walk_sweep")) robot.walk_sweep = read_box(r.at("walk_sweep"));
  if (r.has("crawl_sweep")) robot.crawl_sweep = read_box(r.at("crawl_sweep"));
  if (r.has("pelvis_box")) robot.pelvis_box = read_box(r.at("pelvis_box"));
  if (r.has("jump_sweep")) robot.jump_sweep = read_box(r.at("jump_sweep"));
  if (r.has("support_points_walk")) robot.support_points_walk = read_points(r.at("support_points_walk"));
  if (r.has("support_points_crawl")) robot.support_points_crawl = read_points(r.at("support_points_crawl"));
  if (r.has("hip_height_walk")) robot.hip_height_walk = positive(r.at("hip_height_walk"));
  if (r.has("hip_height_crawl")) robot.hip_height_crawl = positive(r.at("hip_height_crawl"));
  if (r.has("reach_radius")) robot.reach_radius = positive(r.at("reach_radius"));
  if (r.has("v_max")) robot.v_max = positive(r.at("v_max"));
  if (r.has("a_max")) robot.a_max = positive(r.at("a_max"));
  if (r.has("crawl_pitch")) robot.crawl_pitch = r.at("crawl_pitch").number();
  if (r.has("gravity")) robot.gravity = positive(r.at("gravity"));
  if (r.has("crouch_depth")) robot.crouch_depth = positive(r.at("crouch_depth"));
  if (r.has("theta_set")) {
    const Reader thetas = r.at("theta_set");
    robot.theta_set.clear();
    for (std::size_t i = 0; i < thetas.array_size(); ++i) robot.theta_set.push_back(thetas.index(i).number());
  }
  return robot;
}

GrowthGate read_gate(const Reader& r) {
  const std::string text = r.string();
  if (text == "sufficient") return GrowthGate::Sufficient;
  if (text == "necessary") return GrowthGate::Necessary;
  r.fail("expected \"sufficient\" or \"necessary\"");
}

PlannerConfig read_planner(const Reader& r) {
  r.only_keys({"time_limit", "rng_seed", "rotation_weight", "step_size", "sweep_step", "jump_skip_probability",
               "max_transitions_per_cycle", "workers", "slice_budget_ms", "gates"});
  PlannerConfig c;
  if (r.has("time_limit")) c.time_limit = positive(r.at("time_limit"));
  if (r.has("rng_seed")) c.rng_seed = r.at("rng_seed").unsigned_integer();
  if (r.has("rotation_weight")) {
    c.rotation_weight = r.at("rotation_weight").number();
    if (c.rotation_weight < 0.0) r.at("rotation_weight").fail("must be non-negative");
  }
  if (r.has("step_size")) c.step_size = positive(r.at("step_size"));
  if (r.has("sweep_step")) c.sweep_step = positive(r.at("sweep_step"));
  if (r.has("jump_skip_probability")) {
    c.jump_skip_probability = r.at("jump_skip_probability").number();
    if (c.jump_skip_probability < 0.0 || c.jump_skip_probability > 1.0) {
      r.at("jump_skip_probability").fail("must lie in [0, 1]");
    }
  }
  if (r.has("max_transitions_per_cycle")) {
    c.max_transitions_per_cycle = r.at("max_transitions_per_cycle").integer();
    if (c.max_transitions_per_cycle < 0) r.at("max_transitions_per_cycle").fail("must be non-negative");
  }
  if (r.has("workers")) {
    c.workers = r.at("workers").integer();
    if (c.workers < 0) r.at("workers").fail("must be non-negative");
  }
  if (r.has("slice_budget_ms")) c.slice_budget_ms = positive(r.at("slice_budget_ms"));
  if (r.has("gates")) {
    const Reader gates = r.at("gates");
    gates.only_keys({"walk", "crawl", "jump"});
    for (const char* name : {"walk", "crawl", "jump"}) {
      if (gates.has(name)) c.gates[name] = read_gate(gates.at(name));
    }
  }
  return c;
}

// ---------------------------------------------------------------------------------
// Writing

json box_json(const OrientedBox& b) {
  return {{"center", {b.center.x(), b.center.y(), b.center.z()}},
          {"half_extents", {b.half_extents.x(), b.half_extents.y(), b.half_extents.z()}},
          {"yaw", b.yaw}};
}

json pose_json(const Pose& p) {
  const Eigen::Vector3d rpy = p.rpy();
  return {{"xyz", {p.x(), p.y(), p.z()}}, {"rpy", {rpy.x(), rpy.y(), rpy.z()}}};
}

json points_json(const std::vector<Eigen::Vector2d>& points) {
  json out = json::array();
  for (const auto& p : points) out.push_back({p.x(), p.y()});
  return out;
}

std::string gate_name(GrowthGate g) { return g == GrowthGate::Sufficient ? "sufficient" : "necessary"; }

// ---------------------------------------------------------------------------------
// Validation helpers

bool box_encloses(const OrientedBox& outer, const OrientedBox& inner) {
  for (const auto& corner : inner.corners_xy()) {
    for (double dz : {-inner.half_extents.z(), inner.half_extents.z()}) {
      if (!outer.contains({corner.x(), corner.y(), inner.center.z() + dz})) return false;
    }
  }
  return true;
}

bool overlaps_with_area(const GroundSlab& a, const GroundSlab& b) {
  return std::min(a.x_range.hi, b.x_range.hi) > std::max(a.x_range.lo, b.x_range.lo) &&
         std::min(a.y_range.hi, b.y_range.hi) > std::max(a.y_range.lo, b.y_range.lo);
}

bool pose_close(const Pose& a, const Pose& b, double tol) {
  return (a.translation() - b.translation()).cwiseAbs().maxCoeff() <= tol &&
         geodesic_angle(a.orientation(), b.orientation()) <= tol;
}

}  // namespace

GrowthGate PlannerConfig::gate_for(std::string_view action) const {
  const auto it = gates.find(std::string(action));
  if (it != gates.end()) return it->second;
  return action == kJump ? GrowthGate::Necessary : GrowthGate::Sufficient;
}

bool Scenario::enables(std::string_view action) const {
  return std::find(enabled_actions.begin(), enabled_actions.end(), action) != enabled_actions.end();
}

ScenarioError::ScenarioError(std::string field, const std::string& message)
    : std::runtime_error(field.empty() ? message : field + ": " + message), field_(std::move(field)) {}

RobotShape default_robot() {
  RobotShape r;
  r.walk_sweep = OrientedBox{{0.0, 0.0, -0.05}, {0.25, 0.35, 0.83}, 0.0};
  r.crawl_sweep = OrientedBox{{0.05, 0.0, 0.02}, {0.55, 0.35, 0.33}, 0.0};
  r.pelvis_box = OrientedBox{{0.0, 0.0, 0.0}, {0.12, 0.18, 0.10}, 0.0};
  r.jump_sweep = OrientedBox{{0.0, 0.0, 0.0}, {0.30, 0.30, 0.40}, 0.0};
  r.support_points_walk = {{0.10, 0.12}, {0.10, -0.12}, {-0.10, 0.12}, {-0.10, -0.12}};
  r.support_points_crawl = {{0.45, 0.20}, {0.45, -0.20}, {-0.40, 0.20}, {-0.40, -0.20}};
  r.hip_height_walk = 0.9;
  r.hip_height_crawl = 0.35;
  r.reach_radius = 1.1;
  r.v_max = 3.5;
  r.a_max = 25.0;
  r.crawl_pitch = -80.0 * kDeg;
  r.theta_set = {30.0 * kDeg, 40.0 * kDeg, 45.0 * kDeg, 50.0 * kDeg, 60.0 * kDeg, 70.0 * kDeg};
  r.gravity = 9.81;
  r.crouch_depth = 0.3;
  return r;
}

Scenario load_scenario(std::string_view document) {
  json root;
  try {
    root = json::parse(document.begin(), document.end());
  } catch (const json::parse_error& e) {
    throw ScenarioError("", std::string("malformed document: ") + e.what());
  }
  const Reader r(root, "");
  r.only_keys({"name", "environment", "robot", "start", "goals", "sampling_bounds", "enabled_actions", "planner"});

  Scenario s;
  if (r.has("name")) s.name = r.at("name").string();

  const Reader env = r.at("environment");
  env.only_keys({"slabs", "obstacles", "allow_stacked_slabs"});
  if (env.has("allow_stacked_slabs")) s.environment.allow_stacked_slabs = env.at("allow_stacked_slabs").boolean();
  const Reader slabs = env.at("slabs");
  for (std::size_t i = 0; i < slabs.array_size(); ++i) {
    const Reader slab = slabs.index(i);
    slab.only_keys({"x_range", "y_range", "top_height"});
    s.environment.slabs.push_back(
        GroundSlab{read_interval(slab.at("x_range")), read_interval(slab.at("y_range")), slab.at("top_height").number()});
  }
  if (env.has("obstacles")) {
    const Reader obstacles = env.at("obstacles");
    for (std::size_t i = 0; i < obstacles.array_size(); ++i) s.environment.obstacles.push_back(read_box(obstacles.index(i)));
  }

  s.robot = r.has("robot") ? read_robot(r.at("robot")) : default_robot();
  s.start = read_pose(r.at("start"));
  const Reader goals = r.at("goals");
  for (std::size_t i = 0; i < goals.array_size(); ++i) s.goals.push_back(read_pose(goals.index(i)));

  const Reader bounds = r.at("sampling_bounds");
  bounds.only_keys({"x", "y"});
  s.sampling_bounds = SamplingBounds{read_interval(bounds.at("x")), read_interval(bounds.at("y"))};

  const Reader actions = r.at("enabled_actions");
  for (std::size_t i = 0; i < actions.array_size(); ++i) s.enabled_actions.push_back(actions.index(i).string());

  if (r.has("planner")) s.planner = read_planner(r.at("planner"));

  validate_scenario(s);
  return s;
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("", "cannot open scenario file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return load_scenario(buffer.str());
}

std::string serialize_scenario(const Scenario& s) {
  json slabs = json::array();
  for (const auto& slab : s.environment.slabs) {
    slabs.push_back({{"x_range", {slab.x_range.lo, slab.x_range.hi}},
                     {"y_range", {slab.y_range.lo, slab.y_range.hi}},
                     {"top_height", slab.top_height}});
  }
  json obstacles = json::array();
  for (const auto& box : s.environment.obstacles) obstacles.push_back(box_json(box));
  json goals = json::array();
  for (const auto& g : s.goals) goals.push_back(pose_json(g));

  const RobotShape& rb = s.robot;
  json robot = {{"walk_sweep", box_json(rb.walk_sweep)},
                {"crawl_sweep", box_json(rb.crawl_sweep)},
                {"pelvis_box", box_json(rb.pelvis_box)},
                {"jump_sweep", box_json(rb.jump_sweep)},
                {"support_points_walk", points_json(rb.support_points_walk)},
                {"support_points_crawl", points_json(rb.support_points_crawl)},
                {"hip_height_walk", rb.hip_height_walk},
                {"hip_height_crawl", rb.hip_height_crawl},
                {"reach_radius", rb.reach_radius},
                {"v_max", rb.v_max},
                {"a_max", rb.a_max},
                {"crawl_pitch", rb.crawl_pitch},
                {"theta_set", rb.theta_set},
                {"gravity", rb.gravity},
                {"crouch_depth", rb.crouch_depth}};

  const PlannerConfig& pc = s.planner;
  json gates = json::object();
  for (const auto& [name, gate] : pc.gates) gates[name] = gate_name(gate);
  json planner = {{"time_limit", pc.time_limit},
                  {"rng_seed", pc.rng_seed},
                  {"rotation_weight", pc.rotation_weight},
                  {"step_size", pc.step_size},
                  {"sweep_step", pc.sweep_step},
                  {"jump_skip_probability", pc.jump_skip_probability},
                  {"max_transitions_per_cycle", pc.max_transitions_per_cycle},
                  {"workers", pc.workers},
                  {"slice_budget_ms", pc.slice_budget_ms},
                  {"gates", gates}};

  json root = {{"name", s.name},
               {"environment",
                {{"slabs", slabs}, {"obstacles", obstacles}, {"allow_stacked_slabs", s.environment.allow_stacked_slabs}}},
               {"robot", robot},
               {"start", pose_json(s.start)},
               {"goals", goals},
               {"sampling_bounds",
                {{"x", {s.sampling_bounds.x.lo, s.sampling_bounds.x.hi}},
                 {"y", {s.sampling_bounds.y.lo, s.sampling_bounds.y.hi}}}},
               {"enabled_actions", s.enabled_actions},
               {"planner", planner}};
  return root.dump(2) + "\n";
}

void validate_scenario(const Scenario& s) {
  const Environment& env = s.environment;
  if (env.slabs.empty()) throw ScenarioError("environment.slabs", "at least one ground slab is required");
  for (std::size_t i = 0; i < env.slabs.size(); ++i) {
    const std::string field = "environment.slabs[" + std::to_string(i) + "]";
    const GroundSlab& a = env.slabs[i];
    if (a.x_range.lo > a.x_range.hi || a.y_range.lo > a.y_range.hi) throw ScenarioError(field, "empty range");
    if (env.allow_stacked_slabs) continue;
    for (std::size_t j = 0; j < i; ++j) {
      const GroundSlab& b = env.slabs[j];
      if (a.top_height != b.top_height && overlaps_with_area(a, b)) {
        throw ScenarioError(field, "overlaps slab " + std::to_string(j) +
                                       " at a different height (set allow_stacked_slabs to permit)");
      }
    }
  }
  for (std::size_t i = 0; i < env.obstacles.size(); ++i) {
    if ((env.obstacles[i].half_extents.array() <= 0.0).any()) {
      throw ScenarioError("environment.obstacles[" + std::to_string(i) + "].half_extents",
                          "half extents must be strictly positive");
    }
  }

  const RobotShape& rb = s.robot;
  for (const auto& [name, box] : {std::pair{"walk_sweep", &rb.walk_sweep}, std::pair{"crawl_sweep", &rb.crawl_sweep},
                                  std::pair{"pelvis_box", &rb.pelvis_box}, std::pair{"jump_sweep", &rb.jump_sweep}}) {
    if ((box->half_extents.array() <= 0.0).any()) {
      throw ScenarioError(std::string("robot.") + name + ".half_extents", "half extents must be strictly positive");
    }
  }
  if (!box_encloses(rb.walk_sweep, rb.pelvis_box)) throw ScenarioError("robot.walk_sweep", "must enclose pelvis_box");
  if (!box_encloses(rb.crawl_sweep, rb.pelvis_box)) throw ScenarioError("robot.crawl_sweep", "must enclose pelvis_box");
  if (rb.support_points_walk.empty()) throw ScenarioError("robot.support_points_walk", "must not be empty");
  if (rb.support_points_crawl.empty()) throw ScenarioError("robot.support_points_crawl", "must not be empty");
  if (!(rb.hip_height_walk > 0.0)) throw ScenarioError("robot.hip_height_walk", "must be positive");
  if (!(rb.hip_height_crawl > 0.0)) throw ScenarioError("robot.hip_height_crawl", "must be positive");
  if (rb.reach_radius < std::max(rb.hip_height_walk, rb.hip_height_crawl)) {
    throw ScenarioError("robot.reach_radius", "must be at least both hip heights");
  }
  if (!(rb.v_max > 0.0)) throw ScenarioError("robot.v_max", "must be positive");
  if (!(rb.a_max > 0.0)) throw ScenarioError("robot.a_max", "must be positive");
  if (!(rb.gravity > 0.0)) throw ScenarioError("robot.gravity", "must be positive");
  if (rb.theta_set.empty()) throw ScenarioError("robot.theta_set", "must not be empty");
  for (std::size_t i = 0; i < rb.theta_set.size(); ++i) {
    if (!(rb.theta_set[i] > 0.0 && rb.theta_set[i] < std::numbers::pi / 2.0)) {
      throw ScenarioError("robot.theta_set[" + std::to_string(i) + "]", "launch angles must lie in (0, pi/2)");
    }
  }

  if (s.sampling_bounds.x.lo > s.sampling_bounds.x.hi || s.sampling_bounds.y.lo > s.sampling_bounds.y.hi) {
    throw ScenarioError("sampling_bounds", "empty bounds");
  }

  if (s.enabled_actions.empty()) throw ScenarioError("enabled_actions", "at least one action is required");
  std::set<std::string> seen;
  for (std::size_t i = 0; i < s.enabled_actions.size(); ++i) {
    const std::string& a = s.enabled_actions[i];
    const std::string field = "enabled_actions[" + std::to_string(i) + "]";
    if (a != kWalk && a != kCrawl && a != kJump) throw ScenarioError(field, "unknown action '" + a + "'");
    if (!seen.insert(a).second) throw ScenarioError(field, "duplicate action '" + a + "'");
  }

  if (s.enables(kJump) && !(s.enables(kWalk) && s.enables(kCrawl))) {
    throw ScenarioError("enabled_actions", "jump needs walk and crawl enabled");
  }

  const PlannerConfig& pc = s.planner;
  if (!(pc.time_limit > 0.0)) throw ScenarioError("planner.time_limit", "must be positive");
  if (!(pc.step_size > 0.0)) throw ScenarioError("planner.step_size", "must be positive");
  if (!(pc.sweep_step > 0.0)) throw ScenarioError("planner.sweep_step", "must be positive");
  if (pc.rotation_weight < 0.0) throw ScenarioError("planner.rotation_weight", "must be non-negative");
  if (pc.jump_skip_probability < 0.0 || pc.jump_skip_probability > 1.0) {
    throw ScenarioError("planner.jump_skip_probability", "must lie in [0, 1]");
  }
  if (pc.workers < 0) throw ScenarioError("planner.workers", "must be non-negative");

  if (s.goals.empty()) throw ScenarioError("goals", "at least one goal is required");

  const GaitSpec walk = walk_spec(rb);
  const GaitSpec crawl = crawl_spec(rb);
  const auto feasible = [&](const Pose& p) {
    try {
      return (s.enables(kWalk) && gait_sufficient(walk, p, env)) || (s.enables(kCrawl) && gait_sufficient(crawl, p, env));
    } catch (const AmbiguousSupportError&) {
      return false;
    }
  };
  if (!feasible(s.start)) {
    throw ScenarioError("start", "does not satisfy the sufficient condition of any enabled gait");
  }
  for (std::size_t i = 0; i < s.goals.size(); ++i) {
    if (!feasible(s.goals[i])) {
      throw ScenarioError("goals[" + std::to_string(i) + "]",
                          "does not satisfy the sufficient condition of any enabled gait");
    }
  }
}

bool approx_equal(const Scenario& a, const Scenario& b, double tolerance) {
  if (a.name != b.name || !(a.environment == b.environment) || !(a.robot == b.robot) ||
      !(a.sampling_bounds == b.sampling_bounds) || a.enabled_actions != b.enabled_actions || !(a.planner == b.planner) ||
      a.goals.size() != b.goals.size()) {
    return false;
  }
  if (!pose_close(a.start, b.start, tolerance)) return false;
  for (std::size_t i = 0; i < a.goals.size(); ++i) {
    if (!pose_close(a.goals[i], b.goals[i], tolerance)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------------
// Built-in reference geometry

namespace {

constexpr double kWallHeight = 2.0;
constexpr double kBarBottom = 1.0;
constexpr double kBarTop = 1.2;

OrientedBox wall(double x0, double x1, double y0, double y1) {
  return OrientedBox{{0.5 * (x0 + x1), 0.5 * (y0 + y1), 0.5 * kWallHeight},
                     {0.5 * (x1 - x0), 0.5 * (y1 - y0), 0.5 * kWallHeight},
                     0.0};
}

// Horizontal bar, long axis along y before the yaw is applied.
OrientedBox bar(double x, double y, double half_length, double yaw) {
  return OrientedBox{{x, y, 0.5 * (kBarBottom + kBarTop)}, {0.05, half_length, 0.5 * (kBarTop - kBarBottom)}, yaw};
}

GroundSlab slab(double x0, double x1, double y0, double y1) { return GroundSlab{{x0, x1}, {y0, y1}, 0.0}; }

Pose walk_pose(const RobotShape& robot, double x, double y, double yaw) {
  return Pose::from_xyz_rpy({x, y, robot.hip_height_walk}, 0.0, 0.0, yaw);
}

Scenario base(std::string name, double width, double depth) {
  Scenario s;
  s.name = std::move(name);
  s.robot = default_robot();
  s.sampling_bounds = SamplingBounds{{0.0, width}, {0.0, depth}};
  s.enabled_actions = {std::string(kWalk), std::string(kCrawl), std::string(kJump)};
  return s;
}

// Three corridors through a 2 m thick block at x in [5, 7]: C1 y in [1.0, 2.6],
// C2 y in [4.2, 5.8], C3 y in [7.4, 9.0]. Start and goal line up with C3.
Scenario three_routes(char variant) {
  Scenario s = base(std::string("three_routes_") + variant, 12.0, 10.0);
  auto& obstacles = s.environment.obstacles;
  obstacles = {wall(5.0, 7.0, 0.0, 1.0), wall(5.0, 7.0, 2.6, 4.2), wall(5.0, 7.0, 5.8, 7.4), wall(5.0, 7.0, 9.0, 10.0)};

  const auto bars_in = [&](double y0, double y1) {
    for (double x : {5.25, 5.75, 6.25, 6.75}) obstacles.push_back(bar(x, 0.5 * (y0 + y1), 0.5 * (y1 - y0) + 0.1, 0.0));
  };
  bars_in(1.0, 2.6);
  bars_in(4.2, 5.8);
  if (variant != 'a') bars_in(7.4, 9.0);

  if (variant == 'c') {
    s.environment.slabs = {slab(0.0, 8.5, 0.0, 10.0), slab(9.3, 12.0, 0.0, 10.0)};
  } else {
    s.environment.slabs = {slab(0.0, 12.0, 0.0, 10.0)};
  }
  s.start = walk_pose(s.robot, 1.5, 8.2, 0.0);
  s.goals = {walk_pose(s.robot, 10.5, 8.2, 0.0)};
  return s;
}

// A 3 m wide hallway: start on the right, bars at assorted angles, then a gap.
Scenario hallway() {
  Scenario s = base("hallway", 14.0, 3.0);
  s.environment.slabs = {slab(0.0, 3.6, 0.0, 3.0), slab(4.4, 14.0, 0.0, 3.0)};
  const std::array<std::pair<double, double>, 5> bars = {
      {{8.0, 0.25}, {8.45, -0.2}, {8.9, 0.3}, {9.35, -0.3}, {9.8, 0.15}}};
  for (const auto& [x, yaw] : bars) s.environment.obstacles.push_back(bar(x, 1.5, 2.2, yaw));
  s.start = walk_pose(s.robot, 12.8, 1.5, std::numbers::pi);
  s.goals = {walk_pose(s.robot, 1.5, 1.5, std::numbers::pi)};
  return s;
}

// Two full-width gaps with a wall on the middle platform; right to left.
Scenario double_jump() {
  Scenario s = base("double_jump", 12.0, 6.0);
  s.environment.slabs = {slab(0.0, 3.2, 0.0, 6.0), slab(4.0, 8.0, 0.0, 6.0), slab(8.8, 12.0, 0.0, 6.0)};
  s.environment.obstacles = {wall(5.8, 6.2, 0.0, 4.4)};
  s.start = walk_pose(s.robot, 11.0, 3.0, std::numbers::pi);
  s.goals = {walk_pose(s.robot, 1.2, 3.0, std::numbers::pi)};
  return s;
}

}  // namespace

std::vector<std::string> builtin_scenario_names() {
  return {"three_routes_a", "three_routes_b", "three_routes_c", "hallway", "double_jump"};
}

Scenario builtin_scenario(std::string_view name) {
  Scenario s;
  if (name == "three_routes_a") {
    s = three_routes('a');
  } else if (name == "three_routes_b") {
    s = three_routes('b');
  } else if (name == "three_routes_c") {
    s = three_routes('c');
  } else if (name == "hallway") {
    s = hallway();
  } else if (name == "double_jump") {
    s = double_jump();
  } else {
    throw ScenarioError("", "unknown built-in scenario '" + std::string(name) + "'");
  }
  validate_scenario(s);
  return s;
}

}  // namespace pgraph
