#pragma once

#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "pgraph/confirmation.hpp"
#include "pgraph/gait.hpp"
#include "pgraph/graph.hpp"
#include "pgraph/jump.hpp"
#include "pgraph/scenario.hpp"

namespace pgraph {

using Rng = std::mt19937_64;

/// An edge that may or may not be in the graph yet.
struct EdgeCandidate {
  EdgeKind kind = EdgeKind::Gait;
  ActionId from_action = 0;
  ActionId to_action = 0;
  Pose from;
  Pose to;
};

EdgeCandidate candidate_of(const PossibilityGraph& graph, const Edge& edge);

/// Vertices queued for transition attempts. Each vertex is attempted at most once.
class TransitionQueue {
 public:
  /// False when the vertex is already queued or was attempted before.
  bool insert(VertexId v);
  std::optional<VertexId> pop_random(Rng& rng);
  bool empty() const { return queued_.empty(); }
  std::size_t size() const { return queued_.size(); }
  bool attempted(VertexId v) const { return attempted_.count(v) > 0; }

 private:
  std::vector<VertexId> queued_;
  std::set<VertexId> members_;
  std::set<VertexId> attempted_;
};

class ActionRegistry;

/// One way of moving. Owns its transition queue; the graph holds its vertices and edges.
class Action {
 public:
  Action(std::string name, ActionId id, GrowthGate gate, double skip_probability)
      : name_(std::move(name)), id_(id), gate_(gate), skip_probability_(skip_probability) {}
  virtual ~Action() = default;
  Action(const Action&) = delete;
  Action& operator=(const Action&) = delete;

  const std::string& name() const { return name_; }
  ActionId id() const { return id_; }
  GrowthGate gate() const { return gate_; }
  double skip_probability() const { return skip_probability_; }
  TransitionQueue& transition_queue() { return queue_; }

  virtual bool holonomic() const = 0;

  virtual bool sufficient(const Pose& pose) const = 0;
  virtual bool necessary(const Pose& pose) const = 0;
  virtual bool sufficient(const EdgeCandidate& edge) const = 0;
  virtual bool necessary(const EdgeCandidate& edge) const = 0;

  /// Vertices whose action this one can be entered from.
  virtual bool accepts_transition_source(const Vertex& v) const = 0;
  /// Adds the transition vertex and its edges for `v`, returning the new vertex ids.
  virtual std::vector<VertexId> transition_from(VertexId v, PossibilityGraph& graph) const = 0;

  /// Job deciding an edge admitted on necessary conditions only.
  virtual std::unique_ptr<ConfirmationJob> confirmation_job(const PossibilityGraph& graph, const Edge& edge) const = 0;

 private:
  std::string name_;
  ActionId id_;
  GrowthGate gate_;
  double skip_probability_;
  TransitionQueue queue_;
};

/// Walk or crawl.
class GaitAction : public Action {
 public:
  GaitAction(std::shared_ptr<const Scenario> scenario, GaitSpec spec, GaitSpec partner, ActionId id,
             std::optional<ActionId> partner_id);

  bool holonomic() const override { return true; }
  bool sufficient(const Pose& pose) const override;
  bool necessary(const Pose& pose) const override;
  bool sufficient(const EdgeCandidate& edge) const override;
  bool necessary(const EdgeCandidate& edge) const override;
  bool accepts_transition_source(const Vertex& v) const override;
  std::vector<VertexId> transition_from(VertexId v, PossibilityGraph& graph) const override;
  std::unique_ptr<ConfirmationJob> confirmation_job(const PossibilityGraph& graph, const Edge& edge) const override;

  Pose extend(const Pose& from, const Pose& to) const;
  std::optional<Pose> project(const Pose& pose) const;
  /// Gate test for a pose: sufficient, or necessary when the gate allows it.
  bool admits(const Pose& pose) const;
  /// Gate test for a candidate edge; the level it would carry, or nullopt.
  std::optional<ConditionLevel> admit_edge(const EdgeCandidate& edge) const;

  const GaitSpec& spec() const { return spec_; }
  const GaitSpec& partner() const { return partner_; }
  const Environment& environment() const { return scenario_->environment; }
  double step_size() const { return scenario_->planner.step_size; }
  EdgeSampling sampling() const { return {scenario_->planner.rotation_weight, scenario_->planner.sweep_step}; }

 private:
  bool edge_sufficient(const EdgeCandidate& edge) const;
  bool edge_necessary(const EdgeCandidate& edge) const;

  std::shared_ptr<const Scenario> scenario_;
  GaitSpec spec_;
  GaitSpec partner_;
  std::optional<ActionId> partner_id_;
};

/// Standing long jump from a walk vertex to a crawl vertex.
class JumpAction : public Action {
 public:
  JumpAction(std::shared_ptr<const Scenario> scenario, ActionId id, ActionId walk_id, ActionId crawl_id,
             GrowthGate walk_gate, GrowthGate crawl_gate);

  bool holonomic() const override { return false; }
  bool sufficient(const Pose&) const override { return false; }
  bool necessary(const Pose& pose) const override;
  bool sufficient(const EdgeCandidate&) const override { return false; }
  bool necessary(const EdgeCandidate& edge) const override;
  bool accepts_transition_source(const Vertex&) const override { return false; }
  std::vector<VertexId> transition_from(VertexId, PossibilityGraph&) const override { return {}; }
  std::unique_ptr<ConfirmationJob> confirmation_job(const PossibilityGraph& graph, const Edge& edge) const override;

  std::optional<JumpPayload> evaluate(const Pose& launch, const Pose& landing) const;
  Pose extend(const Pose& launch, const Pose& target) const;
  Pose reverse_extend(const Pose& landing, const Pose& target) const;
  std::optional<Pose> find_launch(const Pose& v, const Pose& target) const;
  std::optional<Pose> find_landing(const Pose& v, const Pose& target) const;

  ActionId walk_id() const { return walk_id_; }
  ActionId crawl_id() const { return crawl_id_; }
  JumpContext context() const;

 private:
  std::shared_ptr<const Scenario> scenario_;
  JumpSpec jump_;
  GaitSpec walk_;
  GaitSpec crawl_;
  ActionId walk_id_;
  ActionId crawl_id_;
  GrowthGate walk_gate_;
  GrowthGate crawl_gate_;
};

/// The enabled actions of a scenario, ids assigned in `enabled_actions` order.
class ActionRegistry {
 public:
  explicit ActionRegistry(std::shared_ptr<const Scenario> scenario);

  std::size_t size() const { return actions_.size(); }
  Action& at(ActionId id) { return *actions_.at(id); }
  const Action& at(ActionId id) const { return *actions_.at(id); }
  Action* find(std::string_view name);
  const Action* find(std::string_view name) const;
  std::optional<ActionId> id_of(std::string_view name) const;
  const std::string& name_of(ActionId id) const { return actions_.at(id)->name(); }

  GaitAction* gait(std::string_view name);
  const GaitAction* gait(std::string_view name) const;
  JumpAction* jump();

  auto begin() { return actions_.begin(); }
  auto end() { return actions_.end(); }

 private:
  std::vector<std::unique_ptr<Action>> actions_;
};

inline constexpr double kTransitionEdgeWeight = 0.1;

}  // namespace pgraph
