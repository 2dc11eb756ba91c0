#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "pgraph/pose.hpp"

namespace pgraph {

/// Separation below which two shapes are treated as touching (closed-set convention).
inline constexpr double kContactTolerance = 1e-6;

/// Box that may only rotate about the vertical axis.
struct OrientedBox {
  Eigen::Vector3d center = Eigen::Vector3d::Zero();
  Eigen::Vector3d half_extents = Eigen::Vector3d::Constant(0.5);
  double yaw = 0.0;

  bool operator==(const OrientedBox&) const = default;

  /// Footprint corners in counter-clockwise order.
  std::array<Eigen::Vector2d, 4> corners_xy() const;
  bool contains(const Eigen::Vector3d& point) const;
};

/// Separating-axis test for yaw-only boxes. Symmetric; touching counts as colliding.
bool box_collides(const OrientedBox& a, const OrientedBox& b);

/// Place a pose-relative box template at the pose. Only the pose's translation and
/// yaw are used: templates describe the gait's nominal posture.
OrientedBox place(const OrientedBox& box_template, const Pose& pose);
OrientedBox place(const OrientedBox& box_template, const Eigen::Vector3d& origin, double yaw);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool operator==(const Interval&) const = default;
  bool contains(double v) const { return v >= lo && v <= hi; }
  double length() const { return hi - lo; }
};

struct GroundSlab {
  Interval x_range;
  Interval y_range;
  double top_height = 0.0;

  bool operator==(const GroundSlab&) const = default;
  bool covers(double x, double y) const { return x_range.contains(x) && y_range.contains(y); }
};

class AmbiguousSupportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Environment {
  std::vector<GroundSlab> slabs;
  std::vector<OrientedBox> obstacles;
  bool allow_stacked_slabs = false;

  bool operator==(const Environment&) const = default;
};

/// True iff the shape intersects any obstacle. Ground slabs are not collision geometry.
bool shape_collides_env(const OrientedBox& shape, const Environment& env);

/// Index of the slab under (x, y), or nullopt over a gap. Several candidates at one
/// height resolve to the smallest index. Candidates at different heights throw
/// AmbiguousSupportError unless stacking is allowed, in which case the highest wins.
std::optional<std::size_t> slab_index_under(const Environment& env, double x, double y);
std::optional<GroundSlab> slab_under(const Environment& env, double x, double y);

/// Straight segment between two points.
struct Segment {
  Eigen::Vector3d start;
  Eigen::Vector3d end;

  Eigen::Vector3d position(double s) const { return start + s * (end - start); }
  double length() const { return (end - start).norm(); }
};

/// Ballistic arc through two points in the vertical plane that contains them.
struct BallisticArc {
  Eigen::Vector3d origin;
  Eigen::Vector2d direction_xy;  // unit horizontal heading
  double launch_speed = 0.0;     // m/s
  double launch_angle = 0.0;     // rad above horizontal
  double flight_time = 0.0;      // s
  double gravity = 9.81;

  Eigen::Vector3d position_at_time(double t) const;
  Eigen::Vector3d velocity_at_time(double t) const;
  Eigen::Vector3d position(double s) const { return position_at_time(s * flight_time); }
  double length() const;
  double horizontal_speed() const;
};

using Curve = std::variant<Segment, BallisticArc>;

Eigen::Vector3d curve_position(const Curve& curve, double s);
double curve_length(const Curve& curve);

/// Parameter values at which a shape swept along the curve is tested: a power-of-two
/// number of equal parameter steps, each no longer than `step` in arc length.
/// Halving `step` yields a superset of samples.
std::vector<double> sweep_samples(const Curve& curve, double step);

/// True iff the shape placed (with the given yaw) at any sweep sample collides.
bool sweep_collides(const OrientedBox& shape_template, const Curve& curve, double yaw,
                    const Environment& env, double step);

/// Unique arc launched at elevation theta passing through p0 and p1, or nullopt when
/// theta cannot reach p1. Throws std::invalid_argument when p1 is directly above or
/// below p0 or gravity is not positive.
std::optional<BallisticArc> parabola_for(const Eigen::Vector3d& p0, const Eigen::Vector3d& p1,
                                         double theta, double gravity);

}  // namespace pgraph
