#pragma once

// Independent reference computations used by the unit and acceptance tests. None of
// these call into the library routine they check.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "pgraph/geometry.hpp"
#include "pgraph/pose.hpp"

namespace oracle {

// ---------------------------------------------------------------------------------
// 1-D minimum-acceleration boundary value problem by trapezoidal direct collocation.
// Unknowns: x_i, v_i, a_i at N nodes. Solved as an equality-constrained QP (KKT).

struct CollocationResult {
  double cost = 0.0;
  double x_start = 0.0, v_start = 0.0, x_end = 0.0, v_end = 0.0;
};

inline CollocationResult collocate_min_accel(double x0, double xT, double vT, double T, int nodes = 40) {
  const int n = nodes;
  const int vars = 3 * n;
  const double h = T / (n - 1);
  const auto X = [](int i) { return 3 * i; };
  const auto V = [](int i) { return 3 * i + 1; };
  const auto A = [](int i) { return 3 * i + 2; };

  Eigen::MatrixXd Q = Eigen::MatrixXd::Zero(vars, vars);
  for (int i = 0; i + 1 < n; ++i) {
    Q(A(i), A(i)) += h;  // cost = sum h/2 (a_i^2 + a_{i+1}^2); Q holds twice the weights
    Q(A(i + 1), A(i + 1)) += h;
  }
  const int constraints = 2 * (n - 1) + 4;
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(constraints, vars);
  Eigen::VectorXd d = Eigen::VectorXd::Zero(constraints);
  int row = 0;
  for (int i = 0; i + 1 < n; ++i) {
    C(row, X(i + 1)) = 1.0;
    C(row, X(i)) = -1.0;
    C(row, V(i)) = -h / 2.0;
    C(row, V(i + 1)) = -h / 2.0;
    ++row;
    C(row, V(i + 1)) = 1.0;
    C(row, V(i)) = -1.0;
    C(row, A(i)) = -h / 2.0;
    C(row, A(i + 1)) = -h / 2.0;
    ++row;
  }
  C(row, X(0)) = 1.0, d(row++) = x0;
  C(row, V(0)) = 1.0, d(row++) = 0.0;
  C(row, X(n - 1)) = 1.0, d(row++) = xT;
  C(row, V(n - 1)) = 1.0, d(row++) = vT;

  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(vars + constraints, vars + constraints);
  K.topLeftCorner(vars, vars) = Q;
  K.topRightCorner(vars, constraints) = C.transpose();
  K.bottomLeftCorner(constraints, vars) = C;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(vars + constraints);
  rhs.tail(constraints) = d;
  const Eigen::VectorXd sol = K.fullPivLu().solve(rhs);

  CollocationResult r;
  for (int i = 0; i + 1 < n; ++i) r.cost += h / 2.0 * (sol(A(i)) * sol(A(i)) + sol(A(i + 1)) * sol(A(i + 1)));
  r.x_start = sol(X(0));
  r.v_start = sol(V(0));
  r.x_end = sol(X(n - 1));
  r.v_end = sol(V(n - 1));
  return r;
}

// ---------------------------------------------------------------------------------
// Projectile: velocity-Verlet under gravity until the horizontal distance is covered.
// Returns the height at that horizontal distance (linear interpolation within a step).

inline std::optional<double> integrate_height_at(double horizontal_speed, double vertical_speed, double z0,
                                                 double distance, double g, double dt = 1e-4) {
  if (!(horizontal_speed > 0.0)) return std::nullopt;
  double x = 0.0, z = z0, vz = vertical_speed;
  for (int guard = 0; guard < 10'000'000; ++guard) {
    const double x_next = x + horizontal_speed * dt;
    const double vz_half = vz - 0.5 * g * dt;
    const double z_next = z + vz_half * dt;
    const double vz_next = vz_half - 0.5 * g * dt;
    if (x_next >= distance) {
      const double s = (distance - x) / (x_next - x);
      return z + s * (z_next - z);
    }
    x = x_next;
    z = z_next;
    vz = vz_next;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------------
// Boxes: footprint polygons and a brute-force convex polygon overlap test.

using Poly = std::array<Eigen::Vector2d, 4>;

inline Poly footprint(const pgraph::OrientedBox& b, double inflate = 0.0) {
  const double c = std::cos(b.yaw), s = std::sin(b.yaw);
  const Eigen::Vector2d ex(c, s), ey(-s, c);
  const double hx = b.half_extents.x() + inflate, hy = b.half_extents.y() + inflate;
  const Eigen::Vector2d o = b.center.head<2>();
  return {o + hx * ex + hy * ey, o - hx * ex + hy * ey, o - hx * ex - hy * ey, o + hx * ex - hy * ey};
}

inline double cross(const Eigen::Vector2d& a, const Eigen::Vector2d& b) { return a.x() * b.y() - a.y() * b.x(); }

inline bool point_in_poly(const Poly& p, const Eigen::Vector2d& q) {
  bool pos = false, neg = false;
  for (int i = 0; i < 4; ++i) {
    const double c = cross(p[(i + 1) % 4] - p[i], q - p[i]);
    pos = pos || c > 0.0;
    neg = neg || c < 0.0;
  }
  return !(pos && neg);
}

inline bool segments_cross(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& c,
                           const Eigen::Vector2d& d) {
  const double d1 = cross(b - a, c - a), d2 = cross(b - a, d - a);
  const double d3 = cross(d - c, a - c), d4 = cross(d - c, b - c);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
}

inline bool polys_overlap(const Poly& p, const Poly& q) {
  for (const auto& v : p) {
    if (point_in_poly(q, v)) return true;
  }
  for (const auto& v : q) {
    if (point_in_poly(p, v)) return true;
  }
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (segments_cross(p[i], p[(i + 1) % 4], q[j], q[(j + 1) % 4])) return true;
    }
  }
  return false;
}

/// Verdict with a margin: +1 overlap by more than `margin`, -1 apart by more than
/// `margin` (inflating both by margin/2 still leaves them apart), 0 ambiguous.
inline int box_verdict(const pgraph::OrientedBox& a, const pgraph::OrientedBox& b, double margin) {
  const double az0 = a.center.z() - a.half_extents.z(), az1 = a.center.z() + a.half_extents.z();
  const double bz0 = b.center.z() - b.half_extents.z(), bz1 = b.center.z() + b.half_extents.z();
  const double z_gap = std::max(az0, bz0) - std::min(az1, bz1);  // > 0 when apart vertically
  const bool apart_xy = !polys_overlap(footprint(a, margin / 2), footprint(b, margin / 2));
  if (z_gap > margin || apart_xy) return -1;
  const bool inner_xy = polys_overlap(footprint(a, -margin / 2), footprint(b, -margin / 2));
  if (z_gap < -margin && inner_xy) return 1;
  return 0;
}

/// Monte-Carlo witness: a random point inside both boxes.
inline bool shared_point(const pgraph::OrientedBox& a, const pgraph::OrientedBox& b, std::mt19937_64& rng,
                         int samples) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double c = std::cos(a.yaw), s = std::sin(a.yaw);
  for (int i = 0; i < samples; ++i) {
    const Eigen::Vector3d local(u(rng) * a.half_extents.x(), u(rng) * a.half_extents.y(), u(rng) * a.half_extents.z());
    const Eigen::Vector3d p = a.center + Eigen::Vector3d(c * local.x() - s * local.y(), s * local.x() + c * local.y(),
                                                         local.z());
    if (b.contains(p)) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------------
// Rotation distance through the matrix logarithm (angle from the trace).

inline double rotation_angle(const Eigen::Quaterniond& a, const Eigen::Quaterniond& b) {
  const Eigen::Matrix3d R = a.toRotationMatrix().transpose() * b.toRotationMatrix();
  const double c = std::clamp((R.trace() - 1.0) / 2.0, -1.0, 1.0);
  const Eigen::Vector3d w(R(2, 1) - R(1, 2), R(0, 2) - R(2, 0), R(1, 0) - R(0, 1));
  return std::atan2(0.5 * w.norm(), c);
}

// ---------------------------------------------------------------------------------
// Small directed graphs: exhaustive simple-path enumeration.

struct SmallEdge {
  int from, to;
  double weight;
  bool removed;
};

struct BrutePath {
  double weight = std::numeric_limits<double>::infinity();
  std::vector<int> edges;  // lexicographically smallest among minimum-weight paths
};

inline bool reachable(int n, const std::vector<SmallEdge>& edges, int s, int t) {
  std::vector<bool> seen(n, false);
  std::vector<int> stack{s};
  seen[s] = true;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    if (u == t) return true;
    for (const auto& e : edges) {
      if (!e.removed && e.from == u && !seen[e.to]) {
        seen[e.to] = true;
        stack.push_back(e.to);
      }
    }
  }
  return false;
}

inline std::optional<BrutePath> brute_shortest(int n, const std::vector<SmallEdge>& edges, int s, int t) {
  std::vector<std::pair<double, std::vector<int>>> found;
  std::vector<bool> on(n, false);
  std::vector<int> current;
  std::function<void(int, double)> dfs = [&](int u, double w) {
    if (u == t) {
      found.emplace_back(w, current);
      return;
    }
    on[u] = true;
    for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
      const auto& e = edges[i];
      if (e.removed || e.from != u || on[e.to]) continue;
      current.push_back(i);
      dfs(e.to, w + e.weight);
      current.pop_back();
    }
    on[u] = false;
  };
  dfs(s, 0.0);
  if (found.empty()) return std::nullopt;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& f : found) best = std::min(best, f.first);
  BrutePath out;
  out.weight = best;
  bool have = false;
  for (const auto& f : found) {
    if (f.first > best + 1e-9 * std::max(1.0, best)) continue;
    if (!have || f.second < out.edges) out.edges = f.second;
    have = true;
  }
  return out;
}

}  // namespace oracle
