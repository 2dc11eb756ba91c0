#include "pgraph/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace pgraph {
namespace {

Eigen::Vector2d axis_for_yaw(double yaw) { return {std::cos(yaw), std::sin(yaw)}; }

// Half-width of a box footprint projected onto a unit axis.
double projected_radius(const OrientedBox& box, const Eigen::Vector2d& axis) {
  const Eigen::Vector2d ux = axis_for_yaw(box.yaw);
  const Eigen::Vector2d uy(-ux.y(), ux.x());
  return box.half_extents.x() * std::abs(ux.dot(axis)) + box.half_extents.y() * std::abs(uy.dot(axis));
}

}  // namespace

std::array<Eigen::Vector2d, 4> OrientedBox::corners_xy() const {
  const Eigen::Vector2d ux = axis_for_yaw(yaw) * half_extents.x();
  const Eigen::Vector2d uy = Eigen::Vector2d(-std::sin(yaw), std::cos(yaw)) * half_extents.y();
  const Eigen::Vector2d c = center.head<2>();
  return {c - ux - uy, c + ux - uy, c + ux + uy, c - ux + uy};
}

bool OrientedBox::contains(const Eigen::Vector3d& point) const {
  const Eigen::Vector3d d = point - center;
  if (std::abs(d.z()) > half_extents.z()) return false;
  const double cy = std::cos(yaw);
  const double sy = std::sin(yaw);
  const double lx = cy * d.x() + sy * d.y();
  const double ly = -sy * d.x() + cy * d.y();
  return std::abs(lx) <= half_extents.x() && std::abs(ly) <= half_extents.y();
}

bool box_collides(const OrientedBox& a, const OrientedBox& b) {
  const Eigen::Vector3d d = b.center - a.center;
  if (std::abs(d.z()) > a.half_extents.z() + b.half_extents.z() + kContactTolerance) return false;

  // Cheap bounding-circle rejection before the four footprint axes.
  const double ra = a.half_extents.head<2>().norm();
  const double rb = b.half_extents.head<2>().norm();
  const double planar = d.head<2>().norm();
  if (planar > ra + rb + kContactTolerance) return false;

  const Eigen::Vector2d dxy = d.head<2>();
  const std::array<Eigen::Vector2d, 4> axes = {
      axis_for_yaw(a.yaw), axis_for_yaw(a.yaw + std::numbers::pi / 2.0),
      axis_for_yaw(b.yaw), axis_for_yaw(b.yaw + std::numbers::pi / 2.0)};
  for (const auto& axis : axes) {
    if (std::abs(dxy.dot(axis)) > projected_radius(a, axis) + projected_radius(b, axis) + kContactTolerance) {
      return false;
    }
  }
  return true;
}

OrientedBox place(const OrientedBox& box_template, const Eigen::Vector3d& origin, double yaw) {
  const double c = std::cos(yaw);
  const double s = std::sin(yaw);
  const Eigen::Vector3d& o = box_template.center;
  OrientedBox placed = box_template;
  placed.center = origin + Eigen::Vector3d(c * o.x() - s * o.y(), s * o.x() + c * o.y(), o.z());
  placed.yaw = box_template.yaw + yaw;
  return placed;
}

OrientedBox place(const OrientedBox& box_template, const Pose& pose) {
  return place(box_template, pose.translation(), pose.yaw());
}

bool shape_collides_env(const OrientedBox& shape, const Environment& env) {
  return std::any_of(env.obstacles.begin(), env.obstacles.end(),
                     [&](const OrientedBox& obstacle) { return box_collides(shape, obstacle); });
}

std::optional<std::size_t> slab_index_under(const Environment& env, double x, double y) {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < env.slabs.size(); ++i) {
    const GroundSlab& slab = env.slabs[i];
    if (!slab.covers(x, y)) continue;
    if (!best) {
      best = i;
      continue;
    }
    const double best_top = env.slabs[*best].top_height;
    if (slab.top_height == best_top) continue;  // equal height: smaller index already held
    if (!env.allow_stacked_slabs) {
      throw AmbiguousSupportError("stacked slabs at different heights under (" + std::to_string(x) + ", " +
                                  std::to_string(y) + ")");
    }
    if (slab.top_height > best_top) best = i;
  }
  return best;
}

std::optional<GroundSlab> slab_under(const Environment& env, double x, double y) {
  const auto index = slab_index_under(env, x, y);
  if (!index) return std::nullopt;
  return env.slabs[*index];
}

Eigen::Vector3d BallisticArc::position_at_time(double t) const {
  const double horizontal = horizontal_speed() * t;
  const double vertical = launch_speed * std::sin(launch_angle) * t - 0.5 * gravity * t * t;
  return origin + Eigen::Vector3d(direction_xy.x() * horizontal, direction_xy.y() * horizontal, vertical);
}

Eigen::Vector3d BallisticArc::velocity_at_time(double t) const {
  const double c = horizontal_speed();
  return {direction_xy.x() * c, direction_xy.y() * c, launch_speed * std::sin(launch_angle) - gravity * t};
}

double BallisticArc::horizontal_speed() const { return launch_speed * std::cos(launch_angle); }

double BallisticArc::length() const {
  const double c = horizontal_speed();
  const double w0 = launch_speed * std::sin(launch_angle);
  const double w1 = w0 - gravity * flight_time;
  if (c <= 0.0) return std::abs(w0 * flight_time - 0.5 * gravity * flight_time * flight_time);
  // Closed form of the integral of sqrt(c^2 + w^2) dw.
  const auto antiderivative = [c](double w) {
    return 0.5 * (w * std::hypot(c, w) + c * c * std::asinh(w / c));
  };
  return (antiderivative(w0) - antiderivative(w1)) / gravity;
}

Eigen::Vector3d curve_position(const Curve& curve, double s) {
  return std::visit([s](const auto& c) -> Eigen::Vector3d { return c.position(s); }, curve);
}

double curve_length(const Curve& curve) {
  return std::visit([](const auto& c) { return c.length(); }, curve);
}

std::vector<double> sweep_samples(const Curve& curve, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("sweep step must be positive");

  // Upper bound on arc length covered by one unit of the curve parameter. For the
  // arc, speed is largest at an endpoint because the vertical velocity is linear.
  const double span = std::visit(
      [](const auto& c) -> double {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, Segment>) {
          return c.length();
        } else {
          const double v0 = c.velocity_at_time(0.0).norm();
          const double v1 = c.velocity_at_time(c.flight_time).norm();
          return std::max(v0, v1) * c.flight_time;
        }
      },
      curve);

  constexpr std::size_t kMaxSegments = std::size_t{1} << 20;
  std::size_t segments = 1;
  while (span / static_cast<double>(segments) > step && segments < kMaxSegments) segments *= 2;

  std::vector<double> samples(segments + 1);
  for (std::size_t i = 0; i <= segments; ++i) {
    samples[i] = static_cast<double>(i) / static_cast<double>(segments);
  }
  return samples;
}

bool sweep_collides(const OrientedBox& shape_template, const Curve& curve, double yaw,
                    const Environment& env, double step) {
  if (env.obstacles.empty()) {
    sweep_samples(curve, step);  // still validates step
    return false;
  }
  for (double s : sweep_samples(curve, step)) {
    if (shape_collides_env(place(shape_template, curve_position(curve, s), yaw), env)) return true;
  }
  return false;
}

std::optional<BallisticArc> parabola_for(const Eigen::Vector3d& p0, const Eigen::Vector3d& p1,
                                         double theta, double gravity) {
  if (!(gravity > 0.0)) throw std::invalid_argument("gravity must be positive");
  const Eigen::Vector2d horizontal = (p1 - p0).head<2>();
  const double distance = horizontal.norm();
  if (!(distance > 0.0)) throw std::invalid_argument("parabola endpoints are vertically aligned");

  const double dz = p1.z() - p0.z();
  const double cos_theta = std::cos(theta);
  const double denominator = 2.0 * cos_theta * cos_theta * (distance * std::tan(theta) - dz);
  if (!(denominator > 0.0) || !(cos_theta > 0.0)) return std::nullopt;
  const double speed_sq = gravity * distance * distance / denominator;
  if (!std::isfinite(speed_sq) || !(speed_sq > 0.0)) return std::nullopt;

  BallisticArc arc;
  arc.origin = p0;
  arc.direction_xy = horizontal / distance;
  arc.launch_speed = std::sqrt(speed_sq);
  arc.launch_angle = theta;
  arc.gravity = gravity;
  arc.flight_time = distance / (arc.launch_speed * cos_theta);
  return arc;
}

}  // namespace pgraph
