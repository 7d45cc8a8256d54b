#pragma once

#include "barrier_reach/metann.hpp"

namespace barrier_reach {

struct SensingBloat {
  double position = 0.05;
  double angle = 0.02;
};

/// One planning scene: start uncertainty box, target box with its
/// reference point, static box obstacles in the (x, y) plane, horizons and
/// the controller gains.
struct Scenario {
  HyperBox start;                  // (x, y, theta)
  HyperBox target;                 // (x, y)
  Eigen::Vector2d reference = Eigen::Vector2d::Zero();
  std::vector<HyperBox> obstacles;  // (x, y)
  double total_horizon = 20.0;     // T
  double step_horizon = 2.0;       // T_r
  SensingBloat sensing_bloat;
  ControllerParams controller;
  double deadline_per_step = 2.0;  // seconds
  double working_eps = 0.1;
  int interior_samples = 20;
  double integrator_step = 0.01;
  HyperBox domain;                 // (x, y, theta); default car domain if empty
};

enum class StepSource { Base, Safe };
enum class StepOutcome { Certified, FallbackCertified, Stopped };

struct PlanStep {
  int index = 0;
  ControlInput control_used;
  StepSource source = StepSource::Base;
  StepOutcome outcome = StepOutcome::Stopped;
  std::optional<QuadraticCertificate> cert;
  std::optional<OctagonRegion> working;
  HyperBox step_init;     // uncertainty box the step was certified against
  Trajectory executed;    // empty when the step was not executed
  double wall_time = 0.0;  // seconds
  long boxes_explored = 0;
};

struct PlanResult {
  std::vector<PlanStep> steps;
  bool target_reached = false;
  bool exited_working = false;  // some executed segment was truncated
};

/// Assemble the per-step certification problem: unsafe set is the
/// obstacles lifted over the heading range and clipped to the working
/// region. Throws when the current box is not contained in the working
/// region.
VerificationProblem step_problem(const HyperBox& current_box,
                                 const ControlInput& control,
                                 const Scenario& scenario,
                                 const OctagonRegion& working,
                                 const SystemModel& model,
                                 const QuadraticCertificate& cert,
                                 long budget = kOnlineBudget);

/// Online loop: per step, certify the base control with a MetaNN
/// candidate; on failure retry once with the safe controller aimed at the
/// nearest obstacle; stop when neither certifies or the deadline passes.
/// Ends at target membership or after T / T_r steps.
PlanResult plan(const Scenario& scenario, const SystemModel& model,
                const Mlp& net, long verifier_budget = kOnlineBudget,
                std::uint64_t rng_seed = 0);

}  // namespace barrier_reach
