#pragma once

#include <array>
#include <optional>

#include <Eigen/Core>

namespace pgraph {

/// Point-mass take-off: start at rest at `start`, reach `takeoff` with velocity
/// `takeoff_velocity` after some duration in `duration_range`.
struct TakeoffBVP {
  Eigen::Vector3d start = Eigen::Vector3d::Zero();
  Eigen::Vector3d takeoff = Eigen::Vector3d::Zero();
  Eigen::Vector3d takeoff_velocity = Eigen::Vector3d::Zero();
  double a_max = 25.0;
  double gravity = 9.81;
  double min_duration = 0.1;
  double max_duration = 2.0;
};

/// Per-axis cubic x(t) = c0 + c1 t + c2 t^2 + c3 t^3 on [0, duration].
struct CubicTrajectory {
  std::array<Eigen::Vector3d, 4> coefficients{};
  double duration = 0.0;

  Eigen::Vector3d position(double t) const;
  Eigen::Vector3d velocity(double t) const;
  Eigen::Vector3d acceleration(double t) const;
};

struct TakeoffTrajectory {
  CubicTrajectory trajectory;
  double cost = 0.0;        // integral of |a|^2 over [0, T]
  double peak_accel = 0.0;  // max |a(t)| over [0, T]
  double min_vertical_thrust = 0.0;  // min a_z(t) + g over [0, T]
};

/// The unique cubic minimizing the integrated squared acceleration for a fixed duration.
TakeoffTrajectory min_accel_trajectory(const TakeoffBVP& bvp, double duration);

/// Analytic derivative of the optimal cost with respect to the duration.
double min_accel_cost_derivative(const TakeoffBVP& bvp, double duration);

/// True iff the trajectory respects the acceleration bound and never pulls on the ground.
bool takeoff_feasible(const TakeoffBVP& bvp, const TakeoffTrajectory& trajectory);

inline constexpr int kTakeoffScanPoints = 64;
inline constexpr double kTakeoffDurationTolerance = 1e-3;

/// Least-cost feasible duration: a uniform feasibility scan over the duration range,
/// refined by golden-section search on a penalized cost around the best scanned point.
/// nullopt when no scanned duration is feasible.
std::optional<TakeoffTrajectory> solve_takeoff(const TakeoffBVP& bvp);

/// Incremental form of solve_takeoff used by confirmation jobs.
class TakeoffSolver {
 public:
  explicit TakeoffSolver(TakeoffBVP bvp);

  /// Performs one unit of work; returns true once finished.
  bool step();
  bool done() const { return stage_ == Stage::Done; }
  const std::optional<TakeoffTrajectory>& result() const { return result_; }

 private:
  enum class Stage { Scan, Refine, Done };

  double scan_duration(int index) const;
  double penalized_cost(double duration) const;

  TakeoffBVP bvp_;
  Stage stage_ = Stage::Scan;
  int scan_index_ = 0;
  int best_scan_ = -1;
  double best_scan_cost_ = 0.0;
  double lo_ = 0.0, hi_ = 0.0, x1_ = 0.0, x2_ = 0.0, f1_ = 0.0, f2_ = 0.0;
  std::optional<TakeoffTrajectory> result_;
};

}  // namespace pgraph
