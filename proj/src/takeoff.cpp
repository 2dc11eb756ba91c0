#include "pgraph/takeoff.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pgraph {
namespace {

constexpr double kGoldenRatio = 0.6180339887498949;  // (sqrt(5) - 1) / 2
constexpr double kPenaltyWeight = 1e6;

}  // namespace

Eigen::Vector3d CubicTrajectory::position(double t) const {
  return coefficients[0] + t * (coefficients[1] + t * (coefficients[2] + t * coefficients[3]));
}

Eigen::Vector3d CubicTrajectory::velocity(double t) const {
  return coefficients[1] + t * (2.0 * coefficients[2] + 3.0 * t * coefficients[3]);
}

Eigen::Vector3d CubicTrajectory::acceleration(double t) const {
  return 2.0 * coefficients[2] + 6.0 * t * coefficients[3];
}

TakeoffTrajectory min_accel_trajectory(const TakeoffBVP& bvp, double duration) {
  if (!(duration > 0.0)) throw std::invalid_argument("take-off duration must be positive");
  const double T = duration;
  const Eigen::Vector3d delta = bvp.takeoff - bvp.start;
  const Eigen::Vector3d& v = bvp.takeoff_velocity;

  TakeoffTrajectory out;
  out.trajectory.duration = T;
  out.trajectory.coefficients[0] = bvp.start;
  out.trajectory.coefficients[1] = Eigen::Vector3d::Zero();
  out.trajectory.coefficients[2] = (3.0 * delta - v * T) / (T * T);
  out.trajectory.coefficients[3] = (v * T - 2.0 * delta) / (T * T * T);

  // Per axis: 4 v^2 / T - 12 v d / T^2 + 12 d^2 / T^3.
  out.cost = 4.0 * v.squaredNorm() / T - 12.0 * v.dot(delta) / (T * T) + 12.0 * delta.squaredNorm() / (T * T * T);

  // Acceleration is affine in t, so |a|^2 is convex and a_z monotone: extremes sit at the ends.
  const Eigen::Vector3d a0 = out.trajectory.acceleration(0.0);
  const Eigen::Vector3d a1 = out.trajectory.acceleration(T);
  out.peak_accel = std::max(a0.norm(), a1.norm());
  out.min_vertical_thrust = std::min(a0.z(), a1.z()) + bvp.gravity;
  return out;
}

double min_accel_cost_derivative(const TakeoffBVP& bvp, double duration) {
  const double T = duration;
  const Eigen::Vector3d delta = bvp.takeoff - bvp.start;
  const Eigen::Vector3d& v = bvp.takeoff_velocity;
  return -4.0 * v.squaredNorm() / (T * T) + 24.0 * v.dot(delta) / (T * T * T) -
         36.0 * delta.squaredNorm() / (T * T * T * T);
}

bool takeoff_feasible(const TakeoffBVP& bvp, const TakeoffTrajectory& trajectory) {
  return trajectory.peak_accel <= bvp.a_max && trajectory.min_vertical_thrust >= 0.0;
}

TakeoffSolver::TakeoffSolver(TakeoffBVP bvp) : bvp_(std::move(bvp)) {
  if (!(bvp_.min_duration > 0.0) || !(bvp_.max_duration >= bvp_.min_duration)) {
    throw std::invalid_argument("take-off duration range must be positive and ordered");
  }
}

double TakeoffSolver::scan_duration(int index) const {
  return bvp_.min_duration + (bvp_.max_duration - bvp_.min_duration) * index / (kTakeoffScanPoints - 1);
}

double TakeoffSolver::penalized_cost(double duration) const {
  const TakeoffTrajectory t = min_accel_trajectory(bvp_, duration);
  const double over = std::max(0.0, t.peak_accel - bvp_.a_max);
  const double pull = std::max(0.0, -t.min_vertical_thrust);
  return t.cost + kPenaltyWeight * (over * over + pull * pull);
}

bool TakeoffSolver::step() {
  switch (stage_) {
    case Stage::Scan: {
      const TakeoffTrajectory t = min_accel_trajectory(bvp_, scan_duration(scan_index_));
      if (takeoff_feasible(bvp_, t) && (best_scan_ < 0 || t.cost < best_scan_cost_)) {
        best_scan_ = scan_index_;
        best_scan_cost_ = t.cost;
      }
      if (++scan_index_ < kTakeoffScanPoints) return false;
      if (best_scan_ < 0) {
        stage_ = Stage::Done;
        return true;
      }
      lo_ = scan_duration(std::max(0, best_scan_ - 1));
      hi_ = scan_duration(std::min(kTakeoffScanPoints - 1, best_scan_ + 1));
      x1_ = hi_ - kGoldenRatio * (hi_ - lo_);
      x2_ = lo_ + kGoldenRatio * (hi_ - lo_);
      f1_ = penalized_cost(x1_);
      f2_ = penalized_cost(x2_);
      stage_ = Stage::Refine;
      return false;
    }
    case Stage::Refine: {
      if (hi_ - lo_ > kTakeoffDurationTolerance) {
        if (f1_ <= f2_) {
          hi_ = x2_;
          x2_ = x1_;
          f2_ = f1_;
          x1_ = hi_ - kGoldenRatio * (hi_ - lo_);
          f1_ = penalized_cost(x1_);
        } else {
          lo_ = x1_;
          x1_ = x2_;
          f1_ = f2_;
          x2_ = lo_ + kGoldenRatio * (hi_ - lo_);
          f2_ = penalized_cost(x2_);
        }
        return false;
      }
      TakeoffTrajectory best = min_accel_trajectory(bvp_, scan_duration(best_scan_));
      const TakeoffTrajectory refined = min_accel_trajectory(bvp_, 0.5 * (lo_ + hi_));
      if (takeoff_feasible(bvp_, refined) && refined.cost < best.cost) best = refined;
      result_ = best;
      stage_ = Stage::Done;
      return true;
    }
    case Stage::Done:
      return true;
  }
  return true;
}

std::optional<TakeoffTrajectory> solve_takeoff(const TakeoffBVP& bvp) {
  TakeoffSolver solver(bvp);
  while (!solver.step()) {
  }
  return solver.result();
}

}  // namespace pgraph
