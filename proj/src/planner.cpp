#include "barrier_reach/planner.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace barrier_reach {

namespace {

constexpr double kTieBreakThreshold = 0.02;
constexpr double kTieBreakOmega = 0.1;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

bool position_in_box(const Eigen::VectorXd& state, const HyperBox& box) {
  return state[0] >= box.lower[0] && state[0] <= box.upper[0] &&
         state[1] >= box.lower[1] && state[1] <= box.upper[1];
}

Eigen::Vector2d nearest_obstacle_center(const Scenario& scenario,
                                        const Eigen::VectorXd& state) {
  Eigen::Vector2d best = Eigen::Vector2d::Zero();
  double best_dist = std::numeric_limits<double>::infinity();
  for (const HyperBox& obstacle : scenario.obstacles) {
    const Eigen::Vector2d c(0.5 * (obstacle.lower[0] + obstacle.upper[0]),
                            0.5 * (obstacle.lower[1] + obstacle.upper[1]));
    const double d = (c - state.head<2>()).norm();
    if (d < best_dist) {
      best_dist = d;
      best = c;
    }
  }
  return best;
}

HyperBox sensing_box(const Eigen::VectorXd& state, const SensingBloat& bloat) {
  Eigen::Vector3d lo(state[0] - bloat.position, state[1] - bloat.position,
                     state[2] - bloat.angle);
  Eigen::Vector3d hi(state[0] + bloat.position, state[1] + bloat.position,
                     state[2] + bloat.angle);
  return HyperBox(lo, hi);
}

struct AttemptResult {
  bool certified = false;
  QuadraticCertificate cert;
  OctagonRegion working;
  long boxes_explored = 0;
};

AttemptResult attempt_certification(const Scenario& scenario,
                                    const SystemModel& model, const Mlp& net,
                                    const HyperBox& current_box,
                                    const ControlInput& control,
                                    long verifier_budget,
                                    std::uint64_t rng_seed) {
  AttemptResult result;
  WorkingRegionSpec spec;
  spec.interior_samples = scenario.interior_samples;
  spec.horizon = 2.0 * scenario.step_horizon;
  spec.step = scenario.integrator_step;
  spec.eps = scenario.working_eps;
  spec.domain = scenario.domain;
  try {
    auto [working, complement] =
        build_working_region(model, control, current_box, spec, rng_seed);
    const EncodedInput encoded =
        encode_initial_set(model, current_box, control);
    const QuadraticCertificate cert =
        decode_certificate(model, forward(net, encoded.input), encoded);
    const VerificationProblem problem = step_problem(
        current_box, control, scenario, working, model, cert, verifier_budget);
    const VerificationOutcome outcome = certify(problem);
    result.boxes_explored = outcome.boxes_explored;
    if (outcome.status == VerificationStatus::Valid) {
      result.certified = true;
      result.cert = cert;
      result.working = working;
    }
  } catch (const std::exception&) {
    // Encoding domain violations and degenerate geometry count as a failed
    // certification for this step.
    result.certified = false;
  }
  return result;
}

}  // namespace

VerificationProblem step_problem(const HyperBox& current_box,
                                 const ControlInput& control,
                                 const Scenario& scenario,
                                 const OctagonRegion& working,
                                 const SystemModel& model,
                                 const QuadraticCertificate& cert,
                                 long budget) {
  if (current_box.dim() != model.n) {
    throw std::invalid_argument("step_problem: dimension mismatch");
  }
  for (const auto& corner : current_box.corners()) {
    if (!octagon_membership(corner, working)) {
      throw std::invalid_argument(
          "step_problem: current box not contained in working region");
    }
  }
  const HyperBox working_box = working.bounding_box();
  std::vector<HyperBox> unsafe;
  for (const HyperBox& obstacle : scenario.obstacles) {
    if (obstacle.dim() != 2) {
      throw std::invalid_argument("step_problem: obstacles must be planar");
    }
    Eigen::Vector3d lo(obstacle.lower[0], obstacle.lower[1],
                       working_box.lower[2]);
    Eigen::Vector3d hi(obstacle.upper[0], obstacle.upper[1],
                       working_box.upper[2]);
    if (auto clipped = box_intersection(HyperBox(lo, hi), working_box)) {
      unsafe.push_back(*clipped);
    }
  }
  return VerificationProblem{model,   control,          cert,
                             current_box, UnsafeSpec{unsafe}, working,
                             kDefaultGamma, budget};
}

PlanResult plan(const Scenario& scenario, const SystemModel& model,
                const Mlp& net, long verifier_budget, std::uint64_t rng_seed) {
  if (model.control_arity == 0) {
    throw std::invalid_argument("plan: model must accept control inputs");
  }
  const double ratio = scenario.total_horizon / scenario.step_horizon;
  const long total_steps = std::lround(ratio);
  if (std::abs(ratio - static_cast<double>(total_steps)) > 1e-9 ||
      total_steps < 1) {
    throw std::invalid_argument("plan: T must be a multiple of T_r");
  }

  PlanResult result;
  HyperBox current_box = scenario.start;

  for (long index = 1; index <= total_steps; ++index) {
    const Eigen::VectorXd center = current_box.center();
    if (position_in_box(center, scenario.target)) {
      result.target_reached = true;
      break;
    }

    const auto t0 = std::chrono::steady_clock::now();
    const std::uint64_t step_seed =
        rng_seed ^ (static_cast<std::uint64_t>(index) * 0x9e3779b97f4a7c15ull);

    PlanStep step;
    step.index = static_cast<int>(index);
    step.step_init = current_box;

    const ControlInput base = base_controller(center, scenario.controller);
    step.control_used = base;
    step.source = StepSource::Base;

    AttemptResult attempt = attempt_certification(
        scenario, model, net, current_box, base, verifier_budget, step_seed);
    step.boxes_explored = attempt.boxes_explored;

    if (!attempt.certified && !scenario.obstacles.empty() &&
        seconds_since(t0) <= scenario.deadline_per_step) {
      ControlInput safe =
          safe_controller(center, nearest_obstacle_center(scenario, center),
                          scenario.controller);
      if (std::abs(safe.omega) < kTieBreakThreshold) {
        // Obstacle dead ahead: negating a near-zero steering command does
        // nothing, so force a definite turn.
        safe.omega = safe.omega >= 0.0 ? kTieBreakOmega : -kTieBreakOmega;
      }
      attempt = attempt_certification(scenario, model, net, current_box, safe,
                                      verifier_budget, step_seed);
      step.boxes_explored += attempt.boxes_explored;
      if (attempt.certified) {
        step.control_used = safe;
        step.source = StepSource::Safe;
      }
    }

    const bool on_time = seconds_since(t0) <= scenario.deadline_per_step;
    if (!attempt.certified || !on_time) {
      step.outcome = StepOutcome::Stopped;
      step.wall_time = seconds_since(t0);
      result.steps.push_back(std::move(step));
      return result;
    }

    step.outcome = step.source == StepSource::Base
                       ? StepOutcome::Certified
                       : StepOutcome::FallbackCertified;
    step.cert = attempt.cert;
    step.working = attempt.working;

    Trajectory executed =
        integrate(model, center, step.control_used, scenario.step_horizon,
                  scenario.integrator_step);
    // Guarantees only hold while the segment stays inside the working
    // region; truncate at the first exit and flag the run.
    std::size_t keep = executed.states.size();
    for (std::size_t k = 0; k < executed.states.size(); ++k) {
      if (!octagon_membership(executed.states[k], attempt.working)) {
        keep = k;
        result.exited_working = true;
        break;
      }
    }
    executed.states.resize(keep);
    executed.times.resize(keep);
    step.executed = std::move(executed);
    step.wall_time = seconds_since(t0);

    current_box = sensing_box(step.executed.states.back(), scenario.sensing_bloat);
    result.steps.push_back(std::move(step));
  }

  if (!result.target_reached && !result.steps.empty() &&
      result.steps.back().outcome != StepOutcome::Stopped) {
    const Eigen::VectorXd final_center = current_box.center();
    result.target_reached = position_in_box(final_center, scenario.target);
  }
  return result;
}

}  // namespace barrier_reach
