#pragma once

#include "barrier_reach/metann.hpp"
#include "barrier_reach/planner.hpp"
#include "barrier_reach/rng.hpp"

namespace barrier_reach {

/// Desk-scale defaults shared by the CLI, the tests and the acceptance
/// suite. Horizon 10 for the autonomous benchmarks, twice the planning
/// sub-horizon for the car.
WorkingRegionSpec desk_region_spec(const SystemModel& model);
SynthesisConfig desk_synthesis_config(const SystemModel& model);
TrainOptions desk_train_options(const SystemModel& model);
std::vector<int> desk_layer_sizes(const SystemModel& model);

/// Serpentine grid of initial sets: centers over [-2,2]^2, a few
/// half-width levels per axis. Adjacent cases stay close so certificate
/// seeding carries over.
std::vector<SweepCase> linear_sweep(const SystemModel& model,
                                    int centers_per_axis = 5,
                                    const std::vector<double>& half_widths = {
                                        0.05, 0.175, 0.3});

/// Normalized car cases (position at the origin, omega >= 0) over a
/// v x omega x theta grid with the planner's sensing-box half-widths.
std::vector<SweepCase> car_sweep(const std::vector<double>& speeds = {1.5, 2.0,
                                                                      2.5},
                                 const std::vector<double>& omegas = {0.0, 0.04,
                                                                      0.08,
                                                                      0.12},
                                 int theta_count = 11);

/// Random initial set with centers uniform in [-2,2]^2 and half-widths
/// uniform in [0.05, 0.3].
HyperBox sample_linear_initial_set(Rng& rng);

/// Random normalized car case within the trained parameter sweep.
SweepCase sample_car_case(Rng& rng);

/// Two-obstacle driving scene patterned after the autonomous-driving case
/// study: start in the top right corner, drive to a target box near the
/// origin, T = 20 with T_r = 2.
Scenario two_obstacle_scenario();

}  // namespace barrier_reach
