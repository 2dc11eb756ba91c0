#pragma once

#include <cmath>
#include <numbers>

#include "pgraph/scenario.hpp"

namespace fixture {

inline constexpr double kPi = std::numbers::pi;

inline pgraph::OrientedBox box(double x, double y, double z, double hx, double hy, double hz, double yaw = 0.0) {
  return pgraph::OrientedBox{{x, y, z}, {hx, hy, hz}, yaw};
}

inline pgraph::GroundSlab slab(double x0, double x1, double y0, double y1, double top = 0.0) {
  return pgraph::GroundSlab{{x0, x1}, {y0, y1}, top};
}

inline pgraph::Pose walk_pose(double x, double y, double yaw = 0.0, double ground = 0.0) {
  return pgraph::Pose::from_xyz_rpy({x, y, ground + pgraph::default_robot().hip_height_walk}, 0.0, 0.0, yaw);
}

inline pgraph::Pose crawl_pose(double x, double y, double yaw = 0.0, double ground = 0.0) {
  const auto robot = pgraph::default_robot();
  return pgraph::Pose::from_xyz_rpy({x, y, ground + robot.hip_height_crawl}, 0.0, robot.crawl_pitch, yaw);
}

/// A bar low enough to stop walking but high enough to crawl under, spanning y.
inline pgraph::OrientedBox low_bar(double x, double y0, double y1) {
  return box(x, (y0 + y1) / 2.0, 1.1, 0.05, (y1 - y0) / 2.0, 0.1);
}

/// Open flat floor [0, len] x [0, width] with a walk start and goal near the ends.
inline pgraph::Scenario flat_scenario(double len = 6.0, double width = 3.0) {
  pgraph::Scenario s;
  s.name = "flat";
  s.environment.slabs = {slab(0.0, len, 0.0, width)};
  s.robot = pgraph::default_robot();
  s.start = walk_pose(1.0, width / 2.0);
  s.goals = {walk_pose(len - 1.0, width / 2.0)};
  s.sampling_bounds = {{0.0, len}, {0.0, width}};
  s.enabled_actions = {"walk", "crawl", "jump"};
  s.planner.workers = 0;
  s.planner.time_limit = 10.0;
  return s;
}

/// Two floors separated by a gap in x of the given width.
inline pgraph::Scenario gap_scenario(double gap, double len = 10.0, double width = 3.0) {
  pgraph::Scenario s = flat_scenario(len, width);
  s.name = "gap";
  const double mid = len / 2.0;
  s.environment.slabs = {slab(0.0, mid - gap / 2.0, 0.0, width), slab(mid + gap / 2.0, len, 0.0, width)};
  return s;
}

}  // namespace fixture
