#include "barrier_reach/pipeline.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "barrier_reach/rng.hpp"

namespace barrier_reach {

HyperBox default_domain(const SystemModel& model) {
  if (model.n == 2) {
    return HyperBox(Eigen::Vector2d(-5.0, -5.0), Eigen::Vector2d(5.0, 5.0));
  }
  return HyperBox(Eigen::Vector3d(-10.0, -10.0, -7.0),
                  Eigen::Vector3d(30.0, 30.0, 7.0));
}

namespace {

std::string point_to_string(const Eigen::VectorXd& x) {
  std::ostringstream os;
  os << "(";
  for (int i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
  os << ")";
  return os.str();
}

// Per-direction support maxima of every grid state of one trajectory.
void accumulate_support(const SystemModel& model,
                        const std::optional<ControlInput>& control,
                        const Eigen::VectorXd& start,
                        const WorkingRegionSpec& spec,
                        Eigen::VectorXd& offsets) {
  const Trajectory tr = integrate(model, start, control, spec.horizon, spec.step);
  const int m = OctagonRegion::direction_count(model.n);
  for (const auto& state : tr.states) {
    if (!box_membership(state, spec.domain)) {
      throw std::runtime_error("build_working_region: trajectory from " +
                               point_to_string(start) + " escaped the domain");
    }
    for (int k = 0; k < m; ++k) {
      offsets[k] = std::max(
          offsets[k], OctagonRegion::direction_at(model.n, k).dot(state));
    }
  }
}

}  // namespace

std::pair<OctagonRegion, RegionComplement> build_working_region(
    const SystemModel& model, const std::optional<ControlInput>& control,
    const HyperBox& init, const WorkingRegionSpec& spec,
    std::uint64_t rng_seed, int threads) {
  if (!(spec.horizon > 0.0) || spec.interior_samples < 0) {
    throw std::invalid_argument("build_working_region: bad spec");
  }
  if (init.dim() != model.n || spec.domain.dim() != model.n) {
    throw std::invalid_argument("build_working_region: dimension mismatch");
  }
  for (const auto& corner : init.corners()) {
    if (!box_membership(corner, spec.domain)) {
      throw std::invalid_argument(
          "build_working_region: initial set outside the domain");
    }
  }

  std::vector<Eigen::VectorXd> starts = init.corners();
  Rng rng(rng_seed);
  for (int s = 0; s < spec.interior_samples; ++s) {
    Eigen::VectorXd p(model.n);
    for (int i = 0; i < model.n; ++i) {
      p[i] = rng.uniform(init.lower[i], init.upper[i]);
    }
    starts.push_back(std::move(p));
  }

  const int m = OctagonRegion::direction_count(model.n);
  const double neg_inf = -std::numeric_limits<double>::infinity();
  Eigen::VectorXd offsets = Eigen::VectorXd::Constant(m, neg_inf);

  if (threads <= 1) {
    for (const auto& start : starts) {
      accumulate_support(model, control, start, spec, offsets);
    }
  } else {
    // The hull is a componentwise max-reduction, so partial results can be
    // merged in any order without changing the outcome.
    const int workers =
        std::min<int>(threads, static_cast<int>(starts.size()));
    std::vector<Eigen::VectorXd> partial(
        workers, Eigen::VectorXd::Constant(m, neg_inf));
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w]() {
        try {
          for (std::size_t idx = w; idx < starts.size(); idx += workers) {
            accumulate_support(model, control, starts[idx], spec, partial[w]);
          }
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (const auto& err : errors) {
      if (err) std::rethrow_exception(err);
    }
    for (const auto& part : partial) {
      offsets = offsets.cwiseMax(part);
    }
  }

  OctagonRegion hull(model.n, std::move(offsets));
  OctagonRegion working = intersect(bloat(hull, spec.eps), spec.domain);
  return {working, RegionComplement{working, spec.domain}};
}

ReachSet reach_set(QuadraticCertificate cert, OctagonRegion working) {
  if (cert.dim() != working.dim()) {
    throw std::invalid_argument("reach_set: dimension mismatch");
  }
  return ReachSet{std::move(cert), std::move(working)};
}

bool reach_membership(const ReachSet& rs, const Eigen::VectorXd& x) {
  return octagon_membership(x, rs.working) && evaluate(rs.cert, x) <= 0.0;
}

}  // namespace barrier_reach
