#pragma once

#include <optional>
#include <vector>

#include "pgraph/gait.hpp"
#include "pgraph/geometry.hpp"
#include "pgraph/pose.hpp"
#include "pgraph/scenario.hpp"

namespace pgraph {

struct JumpSpec {
  double v_max = 3.5;
  std::vector<double> theta_set;  // tested in ascending order
  double gravity = 9.81;
  OrientedBox sweep;
  double a_max = 25.0;
  double crouch_depth = 0.3;
};

JumpSpec jump_spec(const RobotShape& robot);

/// Arc chosen for a jump edge.
struct JumpPayload {
  double theta = 0.0;
  double launch_speed = 0.0;
  double flight_time = 0.0;
  double arc_length = 0.0;
  BallisticArc arc;
};

/// Everything the standing long jump needs to evaluate a candidate. Take-off must be a
/// valid walk pose and touchdown a valid crawl pose under the given gates.
struct JumpContext {
  const JumpSpec& jump;
  const GaitSpec& walk;
  const GaitSpec& crawl;
  const Environment& env;
  double sweep_step = 0.05;
  GrowthGate launch_gate = GrowthGate::Sufficient;
  GrowthGate landing_gate = GrowthGate::Sufficient;
};

inline constexpr double kJumpShrinkStep = 0.05;  // m
inline constexpr double kFacingTolerance = 1e-6;  // rad

/// Necessary conditions of a jump edge; the payload holds the first collision-free
/// feasible launch angle.
std::optional<JumpPayload> jump_necessary(const JumpContext& ctx, const Pose& launch, const Pose& landing);

/// True iff some angle in the set reaches `to` from `from` within v_max (ignores collisions).
bool jump_reachable(const JumpContext& ctx, const Eigen::Vector3d& from, const Eigen::Vector3d& to);

/// Furthest allowable jump from `launch` towards `target`: a crawl landing pose facing the
/// travel direction. Returns `launch` unchanged when nothing in range can be landed on.
Pose jump_extend(const JumpContext& ctx, const Pose& launch, const Pose& target);

/// Launch pose for a jump that lands on `landing` and starts as close to `target` as the
/// robot's range allows. Returns `landing` unchanged when no launch spot exists.
Pose jump_reverse_extend(const JumpContext& ctx, const Pose& landing, const Pose& target);

/// Walk pose at v's position facing `target`; nullopt over a gap.
std::optional<Pose> jump_find_launch(const JumpContext& ctx, const Pose& v, const Pose& target);

/// Crawl pose at v's position facing away from `target`; nullopt over a gap.
std::optional<Pose> jump_find_landing(const JumpContext& ctx, const Pose& v, const Pose& target);

}  // namespace pgraph
