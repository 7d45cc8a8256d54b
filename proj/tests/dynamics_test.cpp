#include <doctest.h>

#include <cmath>
#include <sstream>

#include "barrier_reach/dynamics.hpp"
#include "barrier_reach/rng.hpp"

using namespace barrier_reach;

TEST_SUITE_BEGIN("dynamics");

TEST_CASE("integrator matches the closed form of the real-eigenvalue system") {
  const SystemModel model = lin_real_model();
  const Trajectory tr =
      integrate(model, Eigen::Vector2d(1.0, 1.0), std::nullopt, 1.0, 0.01);
  CHECK(tr.states.front() == Eigen::Vector2d(1.0, 1.0));
  CHECK(tr.times.back() == doctest::Approx(1.0));
  CHECK(tr.states.back()[0] == doctest::Approx(std::exp(-1.0)).epsilon(1e-6));
  CHECK(tr.states.back()[1] == doctest::Approx(std::exp(-2.0)).epsilon(1e-6));
}

TEST_CASE("car with zero turn rate drives straight, grid-exact") {
  const SystemModel model = car_model();
  const ControlInput u{1.0, 0.0};
  const Trajectory tr =
      integrate(model, Eigen::Vector3d(0, 0, 0), u, 1.0, 0.01);
  for (std::size_t k = 0; k < tr.times.size(); ++k) {
    CHECK(std::abs(tr.states[k][0] - tr.times[k]) < 1e-9);
    CHECK(tr.states[k][1] == 0.0);
    CHECK(tr.states[k][2] == 0.0);
  }
}

TEST_CASE("horizon equal to step gives a two-state trajectory") {
  const Trajectory tr = integrate(lin_real_model(), Eigen::Vector2d(1, 1),
                                  std::nullopt, 0.05, 0.05);
  CHECK(tr.states.size() == 2);
}

TEST_CASE("integrator rejects bad arguments and reports blow-up") {
  const SystemModel model = lin_real_model();
  CHECK_THROWS_AS(
      integrate(model, Eigen::Vector2d(1, 1), std::nullopt, 1.0, 0.0),
      std::invalid_argument);
  CHECK_THROWS_AS(
      integrate(model, Eigen::Vector2d(1, 1), std::nullopt, 0.001, 0.01),
      std::invalid_argument);
  CHECK_THROWS_AS(
      integrate(model, Eigen::Vector3d(1, 1, 1), std::nullopt, 1.0, 0.01),
      std::invalid_argument);

  SystemModel quadratic;  // dx/dt = x^2 escapes in finite time
  quadratic.id = "blowup";
  quadratic.n = 1;
  quadratic.field = [](const Eigen::VectorXd& x,
                       const std::optional<ControlInput>&) {
    Eigen::VectorXd dx(1);
    dx[0] = x[0] * x[0];
    return dx;
  };
  Eigen::VectorXd x0(1);
  x0[0] = 10.0;
  CHECK_THROWS_WITH_AS(integrate(quadratic, x0, std::nullopt, 5.0, 0.01),
                       doctest::Contains("t="), std::runtime_error);
}

TEST_CASE("integrator order is four") {
  const SystemModel model = lin_real_model();
  const Eigen::Vector2d exact(std::exp(-1.0), std::exp(-2.0));
  double previous_error = -1.0;
  for (double step : {0.1, 0.05}) {
    const Trajectory tr =
        integrate(model, Eigen::Vector2d(1, 1), std::nullopt, 1.0, step);
    const double error = (tr.states.back() - exact).norm();
    if (previous_error > 0.0) {
      const double ratio = previous_error / error;
      CHECK(ratio > 8.0);
      CHECK(ratio < 32.0);
    }
    previous_error = error;
  }
}

TEST_CASE("base controller limits") {
  ControllerParams params;
  params.alpha1 = 0.2;
  params.alpha2 = 3.54;
  params.alpha3 = 0.06;
  params.target = Eigen::Vector2d(0.0, 0.0);

  const ControlInput at_target =
      base_controller(Eigen::Vector3d(0, 0, 0.7), params);
  CHECK(at_target.v == 0.0);
  CHECK(at_target.omega == 0.0);

  const ControlInput far =
      base_controller(Eigen::Vector3d(100.0, 0, 0), params);
  CHECK(std::abs(far.v - params.alpha1) < 1e-10);

  // Heading already at the bearing toward the target: no turn command.
  const ControlInput aligned =
      base_controller(Eigen::Vector3d(1.0, 0.0, M_PI), params);
  CHECK(aligned.omega == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("safe controller negates the angular command toward the obstacle") {
  ControllerParams params;
  params.alpha1 = 0.2;
  params.alpha2 = 3.54;
  params.alpha3 = 0.06;
  params.target = Eigen::Vector2d(5.0, 5.0);
  const Eigen::Vector3d state(1.0, 1.0, 0.3);
  const Eigen::Vector2d obstacle(3.0, 1.5);

  ControllerParams toward = params;
  toward.target = obstacle;
  const ControlInput base = base_controller(state, toward);
  const ControlInput safe = safe_controller(state, obstacle, params);
  CHECK(safe.v == base.v);
  CHECK(safe.omega == -base.omega);
}

TEST_CASE("state transforms") {
  const Eigen::Vector3d x(1, 2, 0.5);
  CHECK(shift_state(x, Eigen::Vector2d(1, 2)) == Eigen::Vector3d(0, 0, 0.5));
  CHECK(reflect_state(x) == Eigen::Vector3d(1, -2, -0.5));
  CHECK(reflect_state(reflect_state(x)) == x);
  CHECK_THROWS_AS(shift_state(Eigen::Vector2d(1, 2), Eigen::Vector2d(0, 0)),
                  std::invalid_argument);
}

TEST_CASE("shift invariance of the car flow") {
  const SystemModel model = car_model();
  Rng rng(101);
  for (int iter = 0; iter < 50; ++iter) {
    const Eigen::Vector3d x0(rng.uniform(-5, 5), rng.uniform(-5, 5),
                             rng.uniform(-3, 3));
    const Eigen::Vector2d shift(rng.uniform(-4, 4), rng.uniform(-4, 4));
    const ControlInput u{rng.uniform(0.5, 3.0), rng.uniform(-0.2, 0.2)};
    const Trajectory a = integrate(model, x0, u, 2.0, 0.01);
    const Trajectory b = integrate(model, shift_state(x0, shift), u, 2.0, 0.01);
    for (std::size_t k = 0; k < a.states.size(); ++k) {
      CHECK((shift_state(a.states[k], shift) - b.states[k]).norm() < 1e-9);
    }
  }
}

TEST_CASE("reflection symmetry of the car flow") {
  const SystemModel model = car_model();
  Rng rng(202);
  for (int iter = 0; iter < 50; ++iter) {
    const Eigen::Vector3d x0(rng.uniform(-5, 5), rng.uniform(-5, 5),
                             rng.uniform(-3, 3));
    const ControlInput u{rng.uniform(0.5, 3.0), rng.uniform(-0.2, 0.2)};
    const ControlInput mirrored{u.v, -u.omega};
    const Trajectory a = integrate(model, x0, u, 2.0, 0.01);
    const Trajectory b = integrate(model, reflect_state(x0), mirrored, 2.0, 0.01);
    for (std::size_t k = 0; k < a.states.size(); ++k) {
      CHECK((reflect_state(a.states[k]) - b.states[k]).norm() < 1e-9);
    }
  }
}

TEST_CASE("symbolic form matches the numeric field") {
  Rng rng(303);
  for (const auto& model :
       {lin_real_model(), lin_complex_model(), car_model()}) {
    const std::optional<ControlInput> u =
        model.control_arity > 0
            ? std::optional<ControlInput>(ControlInput{1.7, 0.09})
            : std::nullopt;
    const std::vector<Expr> field = model.symbolic_form(u);
    for (int iter = 0; iter < 1000; ++iter) {
      Eigen::VectorXd x(model.n);
      for (int i = 0; i < model.n; ++i) x[i] = rng.uniform(-4.0, 4.0);
      const Eigen::VectorXd numeric = model.field(x, u);
      for (int i = 0; i < model.n; ++i) {
        const double symbolic = field[i].eval(x);
        CHECK(std::abs(symbolic - numeric[i]) <=
              1e-12 * std::max(1.0, std::abs(numeric[i])));
      }
    }
  }
}

TEST_CASE("trajectory CSV uses a 17-digit round-trip format") {
  Trajectory tr;
  tr.times = {0.0, 0.1};
  tr.states = {Eigen::Vector2d(1.0 / 3.0, -0.7), Eigen::Vector2d(0.25, 1e-17)};
  std::ostringstream out;
  write_trajectory_csv(out, tr);
  std::istringstream in(out.str());
  std::string header;
  std::getline(in, header);
  CHECK(header == "t,x0,x1");
  std::string line;
  std::getline(in, line);
  const auto second_comma = line.find(',', line.find(',') + 1);
  const std::string x0 = line.substr(line.find(',') + 1,
                                     second_comma - line.find(',') - 1);
  CHECK(std::stod(x0) == 1.0 / 3.0);
}

TEST_SUITE_END();
