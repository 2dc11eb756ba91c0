#include "pgraph/jobs.hpp"

namespace pgraph {

JumpConfirmationJob::JumpConfirmationJob(EdgeId edge, std::shared_ptr<const Scenario> scenario, const Pose& launch,
                                         JumpPayload payload)
    : ConfirmationJob(edge),
      scenario_(std::move(scenario)),
      payload_(std::move(payload)),
      yaw_(launch.yaw()),
      bvp_{launch.translation() - Eigen::Vector3d(0.0, 0.0, scenario_->robot.crouch_depth), launch.translation(),
           payload_.arc.velocity_at_time(0.0), scenario_->robot.a_max, scenario_->robot.gravity},
      solver_(bvp_) {}

JobStatus JumpConfirmationJob::advance() {
  if (stage_ == Stage::Takeoff) {
    if (!solver_.step()) return JobStatus::Running;
    if (!solver_.result()) return JobStatus::Refuted;
    samples_ = sweep_samples(payload_.arc, kConfirmSweepStep);
    stage_ = Stage::Arc;
    return JobStatus::Running;
  }
  const std::size_t end = std::min(samples_.size(), next_sample_ + kArcSamplesPerAdvance);
  for (; next_sample_ < end; ++next_sample_) {
    const OrientedBox body = place(scenario_->robot.jump_sweep, payload_.arc.position(samples_[next_sample_]), yaw_);
    if (shape_collides_env(body, scenario_->environment)) return JobStatus::Refuted;
  }
  return next_sample_ == samples_.size() ? JobStatus::Confirmed : JobStatus::Running;
}

GaitConfirmationJob::GaitConfirmationJob(EdgeId edge, std::shared_ptr<const Scenario> scenario, GaitSpec spec,
                                         GaitSpec partner, ActionId action, EdgeCandidate candidate)
    : ConfirmationJob(edge),
      scenario_(std::move(scenario)),
      spec_(std::move(spec)),
      partner_(std::move(partner)),
      action_(action),
      candidate_(std::move(candidate)) {}

JobStatus GaitConfirmationJob::advance() {
  const Environment& env = scenario_->environment;
  bool ok = false;
  try {
    if (candidate_.kind == EdgeKind::Gait) {
      const EdgeSampling fine{scenario_->planner.rotation_weight, scenario_->planner.sweep_step / 5.0};
      ok = gait_edge_sufficient(spec_, candidate_.from, candidate_.to, env, fine);
    } else {
      const bool forward = candidate_.to_action == action_;
      const Pose& mine = forward ? candidate_.to : candidate_.from;
      const Pose& theirs = forward ? candidate_.from : candidate_.to;
      ok = gait_sufficient(partner_, theirs, env) && gait_sufficient(spec_, mine, env) &&
           transition_motion_clear(partner_, spec_, theirs, mine, env);
    }
  } catch (const AmbiguousSupportError&) {
    ok = false;
  }
  return ok ? JobStatus::Confirmed : JobStatus::Refuted;
}

}  // namespace pgraph
