#include "pgraph/gait.hpp"

#include <algorithm>
#include <cmath>

namespace pgraph {
namespace {

Eigen::Vector2d support_point_world(const Pose& pose, double yaw, const Eigen::Vector2d& offset) {
  const double c = std::cos(yaw);
  const double s = std::sin(yaw);
  return {pose.x() + c * offset.x() - s * offset.y(), pose.y() + s * offset.x() + c * offset.y()};
}

// Distance from a point to the top rectangle of a slab.
double distance_to_slab_top(const GroundSlab& slab, const Eigen::Vector3d& p) {
  const double dx = std::max({slab.x_range.lo - p.x(), 0.0, p.x() - slab.x_range.hi});
  const double dy = std::max({slab.y_range.lo - p.y(), 0.0, p.y() - slab.y_range.hi});
  const double dz = p.z() - slab.top_height;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

}  // namespace

GaitSpec walk_spec(const RobotShape& robot) {
  return GaitSpec{std::string(kWalk), 0.0,   robot.hip_height_walk,     robot.walk_sweep, robot.pelvis_box,
                  robot.support_points_walk, robot.reach_radius, std::string(kCrawl)};
}

GaitSpec crawl_spec(const RobotShape& robot) {
  return GaitSpec{std::string(kCrawl), robot.crawl_pitch,        robot.hip_height_crawl, robot.crawl_sweep,
                  robot.pelvis_box,    robot.support_points_crawl, robot.reach_radius,   std::string(kWalk)};
}

std::optional<std::size_t> gait_support_slab(const GaitSpec& spec, const Pose& pose, const Environment& env) {
  const double yaw = pose.yaw();
  std::optional<std::size_t> slab;
  for (const auto& offset : spec.support_points) {
    const Eigen::Vector2d p = support_point_world(pose, yaw, offset);
    const auto index = slab_index_under(env, p.x(), p.y());
    if (!index) return std::nullopt;
    if (slab && *slab != *index) return std::nullopt;
    slab = index;
  }
  return slab;
}

bool gait_sufficient(const GaitSpec& spec, const Pose& pose, const Environment& env) {
  const Eigen::Vector3d rpy = pose.rpy();
  if (std::abs(rpy.x()) > kPostureTolerance) return false;
  if (std::abs(rpy.y() - spec.nominal_pitch) > kPostureTolerance) return false;

  const auto slab = gait_support_slab(spec, pose, env);
  if (!slab) return false;
  if (std::abs(pose.z() - (env.slabs[*slab].top_height + spec.hip_height)) > kPostureTolerance) return false;

  return !shape_collides_env(place(spec.sweep, pose.translation(), rpy.z()), env);
}

bool gait_necessary(const GaitSpec& spec, const Pose& pose, const Environment& env) {
  if (shape_collides_env(place(spec.pelvis_box, pose), env)) return false;
  return std::any_of(env.slabs.begin(), env.slabs.end(), [&](const GroundSlab& slab) {
    return slab.top_height <= pose.z() && distance_to_slab_top(slab, pose.translation()) <= spec.reach_radius;
  });
}

Pose gait_extend(const Pose& from, const Pose& to, double step, double rotation_weight) {
  if (!(step > 0.0)) throw std::invalid_argument("extension step must be positive");
  const double d = pose_distance(from, to, rotation_weight);
  if (d <= step) return to;
  return interpolate(from, to, step / d);
}

std::optional<Pose> gait_project(const GaitSpec& spec, const Pose& pose, const Environment& env) {
  const auto slab = slab_under(env, pose.x(), pose.y());
  if (!slab) return std::nullopt;
  return Pose::from_xyz_rpy({pose.x(), pose.y(), slab->top_height + spec.hip_height}, 0.0, spec.nominal_pitch,
                            pose.yaw());
}

std::optional<std::vector<Pose>> gait_edge_poses(const GaitSpec& spec, const Pose& from, const Pose& to,
                                                 const Environment& env, const EdgeSampling& sampling) {
  const double d = pose_distance(from, to, sampling.rotation_weight);
  const int pieces = std::max(1, static_cast<int>(std::ceil(d / sampling.sweep_step)));
  std::vector<Pose> poses;
  poses.reserve(static_cast<std::size_t>(pieces) + 1);
  poses.push_back(from);
  for (int i = 1; i < pieces; ++i) {
    const auto projected = gait_project(spec, interpolate(from, to, static_cast<double>(i) / pieces), env);
    if (!projected) return std::nullopt;
    poses.push_back(*projected);
  }
  poses.push_back(to);
  return poses;
}

bool gait_edge_sufficient(const GaitSpec& spec, const Pose& from, const Pose& to, const Environment& env,
                          const EdgeSampling& sampling) {
  const auto poses = gait_edge_poses(spec, from, to, env, sampling);
  if (!poses) return false;
  const double height = from.z();
  return std::all_of(poses->begin(), poses->end(), [&](const Pose& p) {
    return std::abs(p.z() - height) <= kPostureTolerance && gait_sufficient(spec, p, env);
  });
}

bool gait_edge_necessary(const GaitSpec& spec, const Pose& from, const Pose& to, const Environment& env,
                         const EdgeSampling& sampling) {
  const double d = pose_distance(from, to, sampling.rotation_weight);
  const int pieces = std::max(1, static_cast<int>(std::ceil(d / sampling.sweep_step)));
  for (int i = 0; i <= pieces; ++i) {
    if (!gait_necessary(spec, interpolate(from, to, static_cast<double>(i) / pieces), env)) return false;
  }
  return true;
}

bool transition_motion_clear(const GaitSpec& from_spec, const GaitSpec& to_spec, const Pose& source,
                             const Pose& target, const Environment& env) {
  const double yaw = source.yaw();
  for (int i = 1; i <= kTransitionInterpolationCount; ++i) {
    const double s = static_cast<double>(i) / (kTransitionInterpolationCount + 1);
    const Eigen::Vector3d origin = source.translation() + s * (target.translation() - source.translation());
    if (shape_collides_env(place(from_spec.sweep, origin, yaw), env)) return false;
    if (shape_collides_env(place(to_spec.sweep, origin, yaw), env)) return false;
  }
  return true;
}

std::optional<Pose> gait_transition_from(const GaitSpec& to_spec, const GaitSpec& from_spec, const Pose& source,
                                         const Environment& env, GrowthGate gate) {
  const auto candidate = gait_project(to_spec, source, env);
  if (!candidate) return std::nullopt;
  const bool admitted = gate == GrowthGate::Sufficient ? gait_sufficient(to_spec, *candidate, env)
                                                       : gait_necessary(to_spec, *candidate, env);
  if (!admitted) return std::nullopt;
  if (!transition_motion_clear(from_spec, to_spec, source, *candidate, env)) return std::nullopt;
  return candidate;
}

}  // namespace pgraph
