#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "pgraph/geometry.hpp"
#include "pgraph/pose.hpp"

namespace pgraph {

inline constexpr std::string_view kWalk = "walk";
inline constexpr std::string_view kCrawl = "crawl";
inline constexpr std::string_view kJump = "jump";

/// Body geometry and physical limits. Box templates are expressed in the pelvis frame
/// with yaw applied; support points are (forward, left) offsets in meters.
struct RobotShape {
  OrientedBox walk_sweep;
  OrientedBox crawl_sweep;
  OrientedBox pelvis_box;
  OrientedBox jump_sweep;
  std::vector<Eigen::Vector2d> support_points_walk;
  std::vector<Eigen::Vector2d> support_points_crawl;
  double hip_height_walk = 0.9;
  double hip_height_crawl = 0.35;
  double reach_radius = 1.1;
  double v_max = 3.5;   // m/s
  double a_max = 25.0;  // m/s^2
  double crawl_pitch = 0.0;
  std::vector<double> theta_set;  // candidate launch angles, ascending
  double gravity = 9.81;
  double crouch_depth = 0.3;  // pelvis drop at the start of a take-off

  bool operator==(const RobotShape&) const = default;
};

enum class GrowthGate { Sufficient, Necessary };

struct PlannerConfig {
  double time_limit = 60.0;  // s
  std::uint64_t rng_seed = 0;
  double rotation_weight = 0.5;  // m/rad
  double step_size = 0.3;        // m in the weighted metric
  double sweep_step = 0.05;      // m
  double jump_skip_probability = 0.9;
  int max_transitions_per_cycle = 10;
  int workers = 2;  // 0 = inline, deterministic confirmation
  double slice_budget_ms = 5.0;
  std::map<std::string, GrowthGate> gates = {
      {std::string(kWalk), GrowthGate::Sufficient},
      {std::string(kCrawl), GrowthGate::Sufficient},
      {std::string(kJump), GrowthGate::Necessary},
  };

  bool operator==(const PlannerConfig&) const = default;
  GrowthGate gate_for(std::string_view action) const;
};

struct SamplingBounds {
  Interval x;
  Interval y;

  bool operator==(const SamplingBounds&) const = default;
};

struct Scenario {
  std::string name;
  Environment environment;
  RobotShape robot;
  Pose start;
  std::vector<Pose> goals;
  SamplingBounds sampling_bounds;
  std::vector<std::string> enabled_actions;
  PlannerConfig planner;

  bool enables(std::string_view action) const;
};

/// Raised for malformed or infeasible scenario documents; `field()` is the JSON path
/// of the offending entry (e.g. "environment.obstacles[2].half_extents").
class ScenarioError : public std::runtime_error {
 public:
  ScenarioError(std::string field, const std::string& message);
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// The reference robot used by every built-in scenario.
RobotShape default_robot();

/// Parse and validate a scenario document. Throws ScenarioError.
Scenario load_scenario(std::string_view document);
Scenario load_scenario_file(const std::string& path);
std::string serialize_scenario(const Scenario& scenario);

/// Structural checks plus the start/goal feasibility check. Throws ScenarioError.
void validate_scenario(const Scenario& scenario);

/// Equality up to `tolerance` on pose components (rpy round trips are not bit-exact).
bool approx_equal(const Scenario& a, const Scenario& b, double tolerance = 1e-12);

std::vector<std::string> builtin_scenario_names();
/// One of three_routes_a, three_routes_b, three_routes_c, hallway, double_jump.
Scenario builtin_scenario(std::string_view name);

}  // namespace pgraph
