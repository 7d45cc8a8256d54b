#pragma once

#include <cstdint>
#include <utility>

#include "barrier_reach/barrier.hpp"
#include "barrier_reach/dynamics.hpp"
#include "barrier_reach/geometry.hpp"

namespace barrier_reach {

/// Parameters of the four-step working-region construction: simulate from
/// all corners of the initial set plus random interior starts, hull the
/// visited states into an octagon, bloat, and complement against the
/// global domain.
struct WorkingRegionSpec {
  int interior_samples = 20;
  double horizon = 10.0;
  double step = 0.01;
  double eps = 0.1;
  HyperBox domain;
};

/// Global state-space box per model: [-5,5]^2 for the linear systems,
/// [-10,30]^2 x [-7,7] for the car.
HyperBox default_domain(const SystemModel& model);

std::pair<OctagonRegion, RegionComplement> build_working_region(
    const SystemModel& model, const std::optional<ControlInput>& control,
    const HyperBox& init, const WorkingRegionSpec& spec,
    std::uint64_t rng_seed, int threads = 1);

/// R_b = {x in working : B(x) <= 0}.
struct ReachSet {
  QuadraticCertificate cert;
  OctagonRegion working;
};

ReachSet reach_set(QuadraticCertificate cert, OctagonRegion working);
bool reach_membership(const ReachSet& rs, const Eigen::VectorXd& x);

}  // namespace barrier_reach
