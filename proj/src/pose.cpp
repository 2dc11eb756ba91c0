#include "pgraph/pose.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pgraph {

Pose::Pose() : translation_(Eigen::Vector3d::Zero()), orientation_(Eigen::Quaterniond::Identity()) {}

Pose::Pose(const Eigen::Vector3d& translation, const Eigen::Quaterniond& orientation)
    : translation_(translation), orientation_(orientation.normalized()) {
  if (!translation_.allFinite()) {
    throw std::invalid_argument("pose translation must be finite");
  }
  if (!orientation_.coeffs().allFinite()) {
    throw std::invalid_argument("pose orientation must be a finite, non-zero quaternion");
  }
}

Pose Pose::from_xyz_rpy(const Eigen::Vector3d& xyz, double roll, double pitch, double yaw) {
  const Eigen::Quaterniond q = Eigen::AngleAxisd(yaw, Eigen::Vector3d::UnitZ()) *
                               Eigen::AngleAxisd(pitch, Eigen::Vector3d::UnitY()) *
                               Eigen::AngleAxisd(roll, Eigen::Vector3d::UnitX());
  return Pose(xyz, q);
}

Pose Pose::from_xyz_rpy(const Eigen::Vector3d& xyz, const Eigen::Vector3d& rpy) {
  return from_xyz_rpy(xyz, rpy.x(), rpy.y(), rpy.z());
}

Eigen::Vector3d Pose::rpy() const {
  const Eigen::Matrix3d r = orientation_.toRotationMatrix();
  const double pitch = std::asin(std::clamp(-r(2, 0), -1.0, 1.0));
  double roll = 0.0;
  double yaw = 0.0;
  if (std::abs(r(2, 0)) < 1.0 - 1e-12) {
    roll = std::atan2(r(2, 1), r(2, 2));
    yaw = std::atan2(r(1, 0), r(0, 0));
  } else {
    // Gimbal lock: fold everything into yaw.
    yaw = std::atan2(-r(0, 1), r(1, 1));
  }
  return {roll, pitch, yaw};
}

double Pose::roll() const { return rpy().x(); }
double Pose::pitch() const { return rpy().y(); }
double Pose::yaw() const { return rpy().z(); }

Pose Pose::with_translation(const Eigen::Vector3d& t) const { return Pose(t, orientation_); }

bool Pose::operator==(const Pose& other) const {
  return translation_ == other.translation_ && geodesic_angle(orientation_, other.orientation_) == 0.0;
}

double geodesic_angle(const Eigen::Quaterniond& a, const Eigen::Quaterniond& b) {
  // atan2 form stays accurate near zero, where acos(|a.b|) loses half the digits.
  const Eigen::Quaterniond delta = a.conjugate() * b;
  return 2.0 * std::atan2(delta.vec().norm(), std::abs(delta.w()));
}

double pose_distance(const Pose& p, const Pose& q, double rotation_weight) {
  return (p.translation() - q.translation()).norm() +
         rotation_weight * geodesic_angle(p.orientation(), q.orientation());
}

Pose interpolate(const Pose& a, const Pose& b, double s) {
  if (s <= 0.0) return a;
  if (s >= 1.0) return b;
  const Eigen::Vector3d t = a.translation() + s * (b.translation() - a.translation());
  // Eigen's slerp takes the shortest arc.
  return Pose(t, a.orientation().slerp(s, b.orientation()));
}

double wrap_angle(double angle) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double wrapped = std::fmod(angle + std::numbers::pi, two_pi);
  if (wrapped < 0.0) wrapped += two_pi;
  return wrapped - std::numbers::pi;
}

}  // namespace pgraph
