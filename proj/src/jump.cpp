#include "pgraph/jump.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace pgraph {
namespace {

bool passes(const GaitSpec& spec, GrowthGate gate, const Pose& pose, const Environment& env) {
  return gate == GrowthGate::Sufficient ? gait_sufficient(spec, pose, env) : gait_necessary(spec, pose, env);
}

// Horizontal range of the best-angle throw at speed v landing `drop` below the launch.
double max_range(double v, double gravity, double drop) {
  const double radicand = v * v + 2.0 * gravity * drop;
  if (radicand <= 0.0) return 0.0;
  return v / gravity * std::sqrt(radicand);
}

double lowest_slab_top(const Environment& env) {
  double lowest = std::numeric_limits<double>::infinity();
  for (const auto& slab : env.slabs) lowest = std::min(lowest, slab.top_height);
  return lowest;
}

double highest_slab_top(const Environment& env) {
  double highest = -std::numeric_limits<double>::infinity();
  for (const auto& slab : env.slabs) highest = std::max(highest, slab.top_height);
  return highest;
}

// Nominal pose of `spec` at (x, y) with the given yaw, if supported by a single slab.
std::optional<Pose> supported_pose(const GaitSpec& spec, const Environment& env, const Eigen::Vector2d& xy,
                                   double yaw) {
  const auto slab = slab_under(env, xy.x(), xy.y());
  if (!slab) return std::nullopt;
  Pose pose = Pose::from_xyz_rpy({xy.x(), xy.y(), slab->top_height + spec.hip_height}, 0.0, spec.nominal_pitch, yaw);
  if (!gait_support_slab(spec, pose, env)) return std::nullopt;
  return pose;
}

}  // namespace

JumpSpec jump_spec(const RobotShape& robot) {
  JumpSpec spec;
  spec.v_max = robot.v_max;
  spec.theta_set = robot.theta_set;
  std::sort(spec.theta_set.begin(), spec.theta_set.end());
  spec.gravity = robot.gravity;
  spec.sweep = robot.jump_sweep;
  spec.a_max = robot.a_max;
  spec.crouch_depth = robot.crouch_depth;
  return spec;
}

bool jump_reachable(const JumpContext& ctx, const Eigen::Vector3d& from, const Eigen::Vector3d& to) {
  if (!((to - from).head<2>().norm() > 0.0)) return false;
  return std::any_of(ctx.jump.theta_set.begin(), ctx.jump.theta_set.end(), [&](double theta) {
    const auto arc = parabola_for(from, to, theta, ctx.jump.gravity);
    return arc && arc->launch_speed <= ctx.jump.v_max;
  });
}

std::optional<JumpPayload> jump_necessary(const JumpContext& ctx, const Pose& launch, const Pose& landing) {
  const Eigen::Vector2d horizontal = (landing.translation() - launch.translation()).head<2>();
  if (!(horizontal.norm() > 0.0)) return std::nullopt;
  const double heading = std::atan2(horizontal.y(), horizontal.x());
  const double launch_yaw = launch.yaw();
  if (std::abs(wrap_angle(launch_yaw - heading)) > kFacingTolerance) return std::nullopt;

  if (!passes(ctx.walk, ctx.launch_gate, launch, ctx.env)) return std::nullopt;
  if (!passes(ctx.crawl, ctx.landing_gate, landing, ctx.env)) return std::nullopt;

  for (double theta : ctx.jump.theta_set) {
    const auto arc = parabola_for(launch.translation(), landing.translation(), theta, ctx.jump.gravity);
    if (!arc || arc->launch_speed > ctx.jump.v_max) continue;
    if (sweep_collides(ctx.jump.sweep, *arc, launch_yaw, ctx.env, ctx.sweep_step)) continue;
    return JumpPayload{theta, arc->launch_speed, arc->flight_time, arc->length(), *arc};
  }
  return std::nullopt;
}

Pose jump_extend(const JumpContext& ctx, const Pose& launch, const Pose& target) {
  const Eigen::Vector2d delta = (target.translation() - launch.translation()).head<2>();
  const double distance = delta.norm();
  if (!(distance > 0.0) || ctx.env.slabs.empty()) return launch;
  const Eigen::Vector2d direction = delta / distance;
  const double yaw = std::atan2(direction.y(), direction.x());

  const double drop = launch.z() - (lowest_slab_top(ctx.env) + ctx.crawl.hip_height);
  double reach = std::min(distance, max_range(ctx.jump.v_max, ctx.jump.gravity, drop));
  for (; reach > 0.0; reach -= kJumpShrinkStep) {
    const Eigen::Vector2d xy =
        reach == distance ? Eigen::Vector2d(target.translation().head<2>()) : launch.translation().head<2>() + reach * direction;
    const auto landing = supported_pose(ctx.crawl, ctx.env, xy, yaw);
    if (landing && jump_reachable(ctx, launch.translation(), landing->translation())) return *landing;
  }
  return launch;
}

Pose jump_reverse_extend(const JumpContext& ctx, const Pose& landing, const Pose& target) {
  const Eigen::Vector2d delta = (target.translation() - landing.translation()).head<2>();
  const double distance = delta.norm();
  if (!(distance > 0.0) || ctx.env.slabs.empty()) return landing;
  const Eigen::Vector2d direction = delta / distance;
  // The launch faces the landing, i.e. opposite to the search direction.
  const double yaw = std::atan2(-direction.y(), -direction.x());

  const double drop = highest_slab_top(ctx.env) + ctx.walk.hip_height - landing.z();
  double reach = std::min(distance, max_range(ctx.jump.v_max, ctx.jump.gravity, drop));
  for (; reach > 0.0; reach -= kJumpShrinkStep) {
    const Eigen::Vector2d xy = reach == distance ? Eigen::Vector2d(target.translation().head<2>())
                                                 : landing.translation().head<2>() + reach * direction;
    const auto launch = supported_pose(ctx.walk, ctx.env, xy, yaw);
    if (launch && jump_reachable(ctx, launch->translation(), landing.translation())) return *launch;
  }
  return landing;
}

std::optional<Pose> jump_find_launch(const JumpContext& ctx, const Pose& v, const Pose& target) {
  const Eigen::Vector2d delta = (target.translation() - v.translation()).head<2>();
  const double yaw = delta.norm() > 0.0 ? std::atan2(delta.y(), delta.x()) : v.yaw();
  return gait_project(ctx.walk, Pose::from_xyz_rpy(v.translation(), 0.0, 0.0, yaw), ctx.env);
}

std::optional<Pose> jump_find_landing(const JumpContext& ctx, const Pose& v, const Pose& target) {
  const Eigen::Vector2d delta = (v.translation() - target.translation()).head<2>();
  const double yaw = delta.norm() > 0.0 ? std::atan2(delta.y(), delta.x()) : v.yaw();
  return gait_project(ctx.crawl, Pose::from_xyz_rpy(v.translation(), 0.0, 0.0, yaw), ctx.env);
}

}  // namespace pgraph
