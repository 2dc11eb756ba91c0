#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "pgraph/geometry.hpp"
#include "pgraph/pose.hpp"
#include "pgraph/scenario.hpp"

namespace pgraph {

/// One holonomic gait (walk or crawl) described by its nominal posture.
struct GaitSpec {
  std::string name;
  double nominal_pitch = 0.0;
  double hip_height = 0.0;
  OrientedBox sweep;
  OrientedBox pelvis_box;
  std::vector<Eigen::Vector2d> support_points;
  double reach_radius = 0.0;
  std::string transition_partner;
};

GaitSpec walk_spec(const RobotShape& robot);
GaitSpec crawl_spec(const RobotShape& robot);

inline constexpr double kPostureTolerance = 1e-6;
inline constexpr int kTransitionInterpolationCount = 8;

/// Sufficient: sweep collision-free, every support point on one slab with the pelvis at
/// nominal height above it, roll zero and pitch nominal.
bool gait_sufficient(const GaitSpec& spec, const Pose& pose, const Environment& env);

/// Necessary: pelvis box collision-free and some slab top within reach below the pelvis.
bool gait_necessary(const GaitSpec& spec, const Pose& pose, const Environment& env);

/// Pose at metric distance min(step, d(from, to)) from `from` towards `to`.
Pose gait_extend(const Pose& from, const Pose& to, double step, double rotation_weight);

/// Keeps (x, y, yaw); snaps z to the slab top plus hip height and roll/pitch to nominal.
std::optional<Pose> gait_project(const GaitSpec& spec, const Pose& pose, const Environment& env);

/// Support-point test alone (all points over a single slab). Returns the slab index.
std::optional<std::size_t> gait_support_slab(const GaitSpec& spec, const Pose& pose, const Environment& env);

struct EdgeSampling {
  double rotation_weight = 0.5;
  double sweep_step = 0.05;
};

/// Poses along a gait edge, projected onto the gait's nominal posture. nullopt when an
/// intermediate point has no ground.
std::optional<std::vector<Pose>> gait_edge_poses(const GaitSpec& spec, const Pose& from, const Pose& to,
                                                 const Environment& env, const EdgeSampling& sampling);

bool gait_edge_sufficient(const GaitSpec& spec, const Pose& from, const Pose& to, const Environment& env,
                          const EdgeSampling& sampling);
bool gait_edge_necessary(const GaitSpec& spec, const Pose& from, const Pose& to, const Environment& env,
                         const EdgeSampling& sampling);

/// Checks the motion from `source` (nominal for `from_spec`) into the nominal posture of
/// `to_spec` at the same (x, y, yaw): the union of both sweeps must stay collision-free
/// over kTransitionInterpolationCount intermediate poses. Endpoint validity is the
/// caller's concern.
bool transition_motion_clear(const GaitSpec& from_spec, const GaitSpec& to_spec, const Pose& source,
                             const Pose& target, const Environment& env);

/// Candidate pose for entering `to_spec` from a vertex of the partner gait, or nullopt
/// when projection fails, the gate rejects the target, or the motion collides.
std::optional<Pose> gait_transition_from(const GaitSpec& to_spec, const GaitSpec& from_spec, const Pose& source,
                                         const Environment& env, GrowthGate gate);

}  // namespace pgraph
