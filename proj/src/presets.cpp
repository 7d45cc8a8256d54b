#include "barrier_reach/presets.hpp"

#include <cmath>

namespace barrier_reach {

WorkingRegionSpec desk_region_spec(const SystemModel& model) {
  WorkingRegionSpec spec;
  spec.interior_samples = 20;
  spec.step = 0.01;
  spec.eps = 0.1;
  spec.horizon = model.control_arity > 0 ? 4.0 : 10.0;
  spec.domain = default_domain(model);
  return spec;
}

SynthesisConfig desk_synthesis_config(const SystemModel& model) {
  SynthesisConfig config;
  config.sample_count = 500;
  config.learner_rate = 1e-4;
  config.learner_steps = 400;
  config.max_cegis_rounds = 20;
  config.eps_schedule = {0.1, 0.2, 0.4};
  if (model.control_arity > 0) {
    config.budget = 100000;
  }
  return config;
}

TrainOptions desk_train_options(const SystemModel& model) {
  TrainOptions options;
  options.epochs = model.control_arity > 0 ? 12000 : 20000;
  options.rate = 1e-3;
  options.batch_size = 32;
  options.plateau_patience = 500;
  return options;
}

std::vector<int> desk_layer_sizes(const SystemModel& model) {
  return {encoded_input_width(model), 64, 64,
          QuadraticCertificate::coeff_count(model.n)};
}

std::vector<SweepCase> linear_sweep(const SystemModel& model,
                                    int centers_per_axis,
                                    const std::vector<double>& half_widths) {
  std::vector<SweepCase> sweep;
  const double lo = -2.0, hi = 2.0;
  const double step = centers_per_axis > 1
                          ? (hi - lo) / (centers_per_axis - 1)
                          : 0.0;
  for (double hx : half_widths) {
    for (double hy : half_widths) {
      for (int iy = 0; iy < centers_per_axis; ++iy) {
        const double cy = lo + iy * step;
        for (int ix = 0; ix < centers_per_axis; ++ix) {
          // Serpentine sweep keeps consecutive centers adjacent.
          const int col = (iy % 2 == 0) ? ix : centers_per_axis - 1 - ix;
          const double cx = lo + col * step;
          Eigen::Vector2d c(cx, cy), h(hx, hy);
          sweep.push_back({HyperBox(c - h, c + h), std::nullopt});
        }
      }
    }
  }
  (void)model;
  return sweep;
}

std::vector<SweepCase> car_sweep(const std::vector<double>& speeds,
                                 const std::vector<double>& omegas,
                                 int theta_count) {
  std::vector<SweepCase> sweep;
  const Eigen::Vector3d hw(0.05, 0.05, 0.02);
  for (double v : speeds) {
    for (double omega : omegas) {
      for (int t = 0; t < theta_count; ++t) {
        const double theta =
            theta_count > 1 ? 6.2 * t / (theta_count - 1) : 0.0;
        const Eigen::Vector3d c(0.0, 0.0, theta);
        sweep.push_back(
            {HyperBox(c - hw, c + hw), ControlInput{v, omega}});
      }
    }
  }
  return sweep;
}

HyperBox sample_linear_initial_set(Rng& rng) {
  Eigen::Vector2d c(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0));
  Eigen::Vector2d h(rng.uniform(0.05, 0.3), rng.uniform(0.05, 0.3));
  return HyperBox(c - h, c + h);
}

SweepCase sample_car_case(Rng& rng) {
  const double v = rng.uniform(1.5, 2.5);
  const double omega = rng.uniform(0.0, 0.12);
  const double theta = rng.uniform(0.0, 6.2);
  const Eigen::Vector3d c(0.0, 0.0, theta);
  const Eigen::Vector3d hw(0.05, 0.05, 0.02);
  return {HyperBox(c - hw, c + hw), ControlInput{v, omega}};
}

Scenario two_obstacle_scenario() {
  Scenario s;
  const double heading = std::atan2(2.0 - 24.0, 2.0 - 24.0);  // toward target
  const Eigen::Vector3d start_center(24.0, 24.0, heading);
  const Eigen::Vector3d start_hw(0.05, 0.05, 0.02);
  s.start = HyperBox(start_center - start_hw, start_center + start_hw);
  s.target = HyperBox(Eigen::Vector2d(0.0, 0.0), Eigen::Vector2d(4.0, 4.0));
  s.reference = Eigen::Vector2d(2.0, 2.0);
  s.obstacles = {
      HyperBox(Eigen::Vector2d(14.5, 13.0), Eigen::Vector2d(17.0, 15.5)),
      HyperBox(Eigen::Vector2d(6.0, 7.0), Eigen::Vector2d(8.5, 9.5)),
  };
  s.total_horizon = 20.0;
  s.step_horizon = 2.0;
  s.controller.alpha1 = 2.0;
  s.controller.alpha2 = 3.54;
  s.controller.alpha3 = 0.05;
  s.controller.target = s.reference;
  s.deadline_per_step = 2.0;
  s.domain = default_domain(car_model());
  return s;
}

}  // namespace barrier_reach
