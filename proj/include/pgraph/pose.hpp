#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace pgraph {

/// Element of the exploration space: the SE(3) pose of the robot's pelvis frame.
///
/// Orientation is stored as a unit quaternion. Roll/pitch/yaw accessors use the
/// intrinsic Z-Y-X convention (R = Rz(yaw) * Ry(pitch) * Rx(roll)).
class Pose {
 public:
  Pose();
  Pose(const Eigen::Vector3d& translation, const Eigen::Quaterniond& orientation);

  static Pose from_xyz_rpy(const Eigen::Vector3d& xyz, double roll, double pitch, double yaw);
  static Pose from_xyz_rpy(const Eigen::Vector3d& xyz, const Eigen::Vector3d& rpy);

  const Eigen::Vector3d& translation() const { return translation_; }
  const Eigen::Quaterniond& orientation() const { return orientation_; }

  double x() const { return translation_.x(); }
  double y() const { return translation_.y(); }
  double z() const { return translation_.z(); }

  double roll() const;
  double pitch() const;
  double yaw() const;
  Eigen::Vector3d rpy() const;

  Pose with_translation(const Eigen::Vector3d& t) const;

  bool operator==(const Pose& other) const;
  bool operator!=(const Pose& other) const { return !(*this == other); }

 private:
  Eigen::Vector3d translation_;
  Eigen::Quaterniond orientation_;
};

/// Geodesic angle between two rotations, in [0, pi].
double geodesic_angle(const Eigen::Quaterniond& a, const Eigen::Quaterniond& b);

/// Weighted exploration metric: translation distance plus rotation_weight times
/// the geodesic rotation angle.
double pose_distance(const Pose& p, const Pose& q, double rotation_weight);

/// Point at fraction s in [0,1] along the metric geodesic from a to b
/// (linear translation, shortest-arc slerp).
Pose interpolate(const Pose& a, const Pose& b, double s);

/// Wrap an angle into [-pi, pi).
double wrap_angle(double angle);

}  // namespace pgraph
