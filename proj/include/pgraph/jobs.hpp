#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "pgraph/action.hpp"
#include "pgraph/confirmation.hpp"
#include "pgraph/takeoff.hpp"

namespace pgraph {

inline constexpr double kConfirmSweepStep = 0.01;  // m, arc re-check resolution
inline constexpr int kArcSamplesPerAdvance = 32;

/// Confirms a jump edge: a dynamically feasible take-off reaching the arc's launch
/// velocity, then a fine-grained collision sweep of the arc.
class JumpConfirmationJob : public ConfirmationJob {
 public:
  JumpConfirmationJob(EdgeId edge, std::shared_ptr<const Scenario> scenario, const Pose& launch, JumpPayload payload);

  const TakeoffBVP& bvp() const { return bvp_; }
  /// Take-off found by the solver, once that stage has finished.
  const std::optional<TakeoffTrajectory>& takeoff() const { return solver_.result(); }

 protected:
  JobStatus advance() override;

 private:
  enum class Stage { Takeoff, Arc };

  std::shared_ptr<const Scenario> scenario_;
  JumpPayload payload_;
  double yaw_;
  TakeoffBVP bvp_;
  TakeoffSolver solver_;
  Stage stage_ = Stage::Takeoff;
  std::vector<double> samples_;
  std::size_t next_sample_ = 0;
};

/// Stand-in for a full motion plan of a gait edge admitted on necessary conditions:
/// re-checks the sufficient condition at five times the sweep resolution.
class GaitConfirmationJob : public ConfirmationJob {
 public:
  GaitConfirmationJob(EdgeId edge, std::shared_ptr<const Scenario> scenario, GaitSpec spec, GaitSpec partner,
                      ActionId action, EdgeCandidate candidate);

 protected:
  JobStatus advance() override;

 private:
  std::shared_ptr<const Scenario> scenario_;
  GaitSpec spec_;
  GaitSpec partner_;
  ActionId action_;
  EdgeCandidate candidate_;
};

}  // namespace pgraph
