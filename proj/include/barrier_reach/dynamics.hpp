#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "barrier_reach/expr.hpp"

namespace barrier_reach {

/// (v, omega) pair driving the car model; ignored by autonomous systems.
struct ControlInput {
  double v = 0.0;
  double omega = 0.0;
};

/// Gains and reference point of the go-to-goal feedback law.
struct ControllerParams {
  double alpha1 = 0.2;   // speed gain
  double alpha2 = 3.54;  // distance decay
  double alpha3 = 0.06;  // angular gain
  Eigen::Vector2d target = Eigen::Vector2d::Zero();
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Eigen::VectorXd> states;
  std::optional<ControlInput> control;
};

/// A vector field with both a numeric evaluator and per-component symbolic
/// expressions (with any control input substituted as constants) so the
/// verifier can enclose it with interval arithmetic.
struct SystemModel {
  std::string id;
  int n = 0;
  int control_arity = 0;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&,
                                const std::optional<ControlInput>&)>
      field;
  std::function<std::vector<Expr>(const std::optional<ControlInput>&)>
      symbolic_form;
};

/// dx/dt = -x, dy/dt = -2y.
SystemModel lin_real_model();
/// dx/dt = y, dy/dt = -0.2x - 0.2y.
SystemModel lin_complex_model();
/// dx/dt = v cos(theta), dy/dt = v sin(theta), dtheta/dt = omega.
SystemModel car_model();

/// Lookup by CLI identifier: lin-real | lin-complex | car.
SystemModel model_by_id(const std::string& id);

/// Classical fixed-step 4th-order integration. The first state is x0 and
/// the final time lands on horizon to within one step.
Trajectory integrate(const SystemModel& model, const Eigen::VectorXd& x0,
                     const std::optional<ControlInput>& u, double horizon,
                     double step);

ControlInput base_controller(const Eigen::VectorXd& state,
                             const ControllerParams& params);

/// Retargets the base controller at the obstacle center and flips the sign
/// of the angular speed to steer away.
ControlInput safe_controller(const Eigen::VectorXd& state,
                             const Eigen::Vector2d& obstacle_center,
                             const ControllerParams& params);

Eigen::VectorXd shift_state(const Eigen::VectorXd& x,
                            const Eigen::Vector2d& dx);
Eigen::VectorXd reflect_state(const Eigen::VectorXd& x);

/// Wrap to [-pi, pi].
double wrap_angle(double a);

/// Header t,x0,...,x{n-1}; one row per grid point, 17 significant digits.
void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory);

}  // namespace barrier_reach
