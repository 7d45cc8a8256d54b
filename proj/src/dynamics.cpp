#include "barrier_reach/dynamics.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace barrier_reach {

namespace {

void require_control(const std::optional<ControlInput>& u) {
  if (!u) throw std::invalid_argument("car model requires a control input");
}

std::string format17(double v) {
  char buf[32];
  const auto res =
      std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

}  // namespace

SystemModel lin_real_model() {
  SystemModel m;
  m.id = "lin-real";
  m.n = 2;
  m.control_arity = 0;
  m.field = [](const Eigen::VectorXd& x, const std::optional<ControlInput>&) {
    Eigen::VectorXd dx(2);
    dx[0] = -x[0];
    dx[1] = -2.0 * x[1];
    return dx;
  };
  m.symbolic_form = [](const std::optional<ControlInput>&) {
    return std::vector<Expr>{-Expr::variable(0),
                             Expr::constant(-2.0) * Expr::variable(1)};
  };
  return m;
}

SystemModel lin_complex_model() {
  SystemModel m;
  m.id = "lin-complex";
  m.n = 2;
  m.control_arity = 0;
  m.field = [](const Eigen::VectorXd& x, const std::optional<ControlInput>&) {
    Eigen::VectorXd dx(2);
    dx[0] = x[1];
    dx[1] = -0.2 * x[0] - 0.2 * x[1];
    return dx;
  };
  m.symbolic_form = [](const std::optional<ControlInput>&) {
    return std::vector<Expr>{
        Expr::variable(1), Expr::constant(-0.2) * Expr::variable(0) +
                               Expr::constant(-0.2) * Expr::variable(1)};
  };
  return m;
}

SystemModel car_model() {
  SystemModel m;
  m.id = "car";
  m.n = 3;
  m.control_arity = 2;
  m.field = [](const Eigen::VectorXd& x, const std::optional<ControlInput>& u) {
    require_control(u);
    Eigen::VectorXd dx(3);
    dx[0] = u->v * std::cos(x[2]);
    dx[1] = u->v * std::sin(x[2]);
    dx[2] = u->omega;
    return dx;
  };
  m.symbolic_form = [](const std::optional<ControlInput>& u) {
    require_control(u);
    return std::vector<Expr>{Expr::constant(u->v) * cos(Expr::variable(2)),
                             Expr::constant(u->v) * sin(Expr::variable(2)),
                             Expr::constant(u->omega)};
  };
  return m;
}

SystemModel model_by_id(const std::string& id) {
  if (id == "lin-real") return lin_real_model();
  if (id == "lin-complex") return lin_complex_model();
  if (id == "car") return car_model();
  throw std::invalid_argument("unknown model: " + id);
}

Trajectory integrate(const SystemModel& model, const Eigen::VectorXd& x0,
                     const std::optional<ControlInput>& u, double horizon,
                     double step) {
  if (!(step > 0.0)) throw std::invalid_argument("integrate: step <= 0");
  if (!(horizon >= step)) {
    throw std::invalid_argument("integrate: horizon < step");
  }
  if (x0.size() != model.n) {
    throw std::invalid_argument("integrate: dimension mismatch");
  }
  const long steps = std::lround(horizon / step);
  Trajectory tr;
  tr.control = u;
  tr.times.reserve(steps + 1);
  tr.states.reserve(steps + 1);
  tr.times.push_back(0.0);
  tr.states.push_back(x0);
  Eigen::VectorXd x = x0;
  for (long k = 0; k < steps; ++k) {
    const Eigen::VectorXd k1 = model.field(x, u);
    const Eigen::VectorXd k2 = model.field(x + 0.5 * step * k1, u);
    const Eigen::VectorXd k3 = model.field(x + 0.5 * step * k2, u);
    const Eigen::VectorXd k4 = model.field(x + step * k3, u);
    x += (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    const double t = static_cast<double>(k + 1) * step;
    if (!x.allFinite()) {
      throw std::runtime_error("integrate: state blew up at t=" +
                               std::to_string(t));
    }
    tr.times.push_back(t);
    tr.states.push_back(x);
  }
  return tr;
}

double wrap_angle(double a) { return std::remainder(a, 2.0 * M_PI); }

ControlInput base_controller(const Eigen::VectorXd& state,
                             const ControllerParams& params) {
  if (state.size() != 3) {
    throw std::invalid_argument("base_controller: expected (x, y, theta)");
  }
  const double dx = state[0] - params.target[0];
  const double dy = state[1] - params.target[1];
  const double dist = std::hypot(dx, dy);
  ControlInput u;
  if (dist == 0.0) return u;  // defined limit: stop at the reference point
  u.v = params.alpha1 * (1.0 - std::exp(-params.alpha2 * dist));
  // Bearing from the vehicle towards the reference point; atan2 keeps the
  // quadrant correct where a plain arctan of the slope would not.
  const double theta_ref = std::atan2(-dy, -dx);
  u.omega = params.alpha3 * wrap_angle(theta_ref - state[2]);
  return u;
}

ControlInput safe_controller(const Eigen::VectorXd& state,
                             const Eigen::Vector2d& obstacle_center,
                             const ControllerParams& params) {
  ControllerParams retargeted = params;
  retargeted.target = obstacle_center;
  ControlInput u = base_controller(state, retargeted);
  u.omega = -u.omega;
  return u;
}

Eigen::VectorXd shift_state(const Eigen::VectorXd& x,
                            const Eigen::Vector2d& dx) {
  if (x.size() != 3) {
    throw std::invalid_argument("shift_state: expected car state");
  }
  Eigen::VectorXd out = x;
  out[0] -= dx[0];
  out[1] -= dx[1];
  return out;
}

Eigen::VectorXd reflect_state(const Eigen::VectorXd& x) {
  if (x.size() != 3) {
    throw std::invalid_argument("reflect_state: expected car state");
  }
  Eigen::VectorXd out = x;
  out[1] = -out[1];
  out[2] = -out[2];
  return out;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory) {
  const int n = trajectory.states.empty()
                    ? 0
                    : static_cast<int>(trajectory.states.front().size());
  out << "t";
  for (int i = 0; i < n; ++i) out << ",x" << i;
  out << "\n";
  for (std::size_t k = 0; k < trajectory.times.size(); ++k) {
    out << format17(trajectory.times[k]);
    for (int i = 0; i < n; ++i) out << "," << format17(trajectory.states[k][i]);
    out << "\n";
  }
}

}  // namespace barrier_reach
