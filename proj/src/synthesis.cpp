#include "barrier_reach/synthesis.hpp"

#include <algorithm>
#include <cmath>

#include "barrier_reach/rng.hpp"

namespace barrier_reach {

namespace {

Eigen::VectorXd sample_in_box(const HyperBox& box, Rng& rng) {
  Eigen::VectorXd p(box.dim());
  for (int i = 0; i < box.dim(); ++i) {
    p[i] = rng.uniform(box.lower[i], box.upper[i]);
  }
  return p;
}

double box_volume(const HyperBox& box) {
  double v = 1.0;
  for (int i = 0; i < box.dim(); ++i) v *= box.upper[i] - box.lower[i];
  return v;
}

// Volume-weighted uniform sampling over a list of boxes.
class BoxListSampler {
 public:
  explicit BoxListSampler(std::vector<HyperBox> boxes)
      : boxes_(std::move(boxes)) {
    double total = 0.0;
    for (const auto& b : boxes_) {
      total += box_volume(b);
      cumulative_.push_back(total);
    }
  }

  bool empty() const {
    return boxes_.empty() || cumulative_.back() <= 0.0;
  }

  Eigen::VectorXd draw(Rng& rng) {
    const double u = rng.uniform(0.0, cumulative_.back());
    const auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), u);
    const std::size_t idx =
        std::min<std::size_t>(it - cumulative_.begin(), boxes_.size() - 1);
    return sample_in_box(boxes_[idx], rng);
  }

 private:
  std::vector<HyperBox> boxes_;
  std::vector<double> cumulative_;
};

std::vector<HyperBox> unsafe_boxes(const UnsafeSpec& unsafe,
                                   const OctagonRegion& working) {
  if (const auto* complement = std::get_if<RegionComplement>(&unsafe)) {
    return complement_slabs(*complement);
  }
  std::vector<HyperBox> out;
  const HyperBox wbox = working.bounding_box();
  for (const HyperBox& obstacle : std::get<std::vector<HyperBox>>(unsafe)) {
    if (auto clipped = box_intersection(obstacle, wbox)) {
      out.push_back(*clipped);
    }
  }
  return out;
}

// Uniform sample inside the working octagon by rejection from its box.
std::optional<Eigen::VectorXd> sample_in_octagon(const OctagonRegion& region,
                                                 const HyperBox& box, Rng& rng) {
  for (int attempt = 0; attempt < 200; ++attempt) {
    Eigen::VectorXd p = sample_in_box(box, rng);
    if (octagon_membership(p, region)) return p;
  }
  return std::nullopt;
}

}  // namespace

QuadraticCertificate learner_step(
    const QuadraticCertificate& cert,
    const std::vector<Eigen::VectorXd>& samples_init,
    const std::vector<Eigen::VectorXd>& samples_unsafe,
    const std::vector<Eigen::VectorXd>& samples_domain,
    const SystemModel& model, const std::optional<ControlInput>& control,
    double rate, double margin_init, double margin_lie, double zero_band) {
  const int n = cert.dim();
  const Eigen::VectorXd& a = cert.coeffs();
  Eigen::VectorXd grad = Eigen::VectorXd::Zero(a.size());
  for (const auto& x : samples_init) {
    const Eigen::VectorXd phi = monomials(n, x);
    if (a.dot(phi) + margin_init > 0.0) grad += phi;
  }
  for (const auto& x : samples_unsafe) {
    const Eigen::VectorXd phi = monomials(n, x);
    if (margin_init - a.dot(phi) > 0.0) grad -= phi;
  }
  for (const auto& x : samples_domain) {
    const Eigen::VectorXd phi = monomials(n, x);
    if (std::abs(a.dot(phi)) > zero_band) continue;
    const Eigen::VectorXd psi = lie_monomials(n, x, model.field(x, control));
    if (a.dot(psi) + margin_lie > 0.0) grad += psi;
  }
  if (rate == 0.0 || grad.isZero(0.0)) return cert;
  return QuadraticCertificate(n, a - rate * grad);
}

double learner_loss(const QuadraticCertificate& cert,
                    const std::vector<Eigen::VectorXd>& samples_init,
                    const std::vector<Eigen::VectorXd>& samples_unsafe,
                    const std::vector<Eigen::VectorXd>& samples_domain,
                    const SystemModel& model,
                    const std::optional<ControlInput>& control,
                    double margin_init, double margin_lie, double zero_band) {
  const int n = cert.dim();
  const Eigen::VectorXd& a = cert.coeffs();
  double loss = 0.0;
  for (const auto& x : samples_init) {
    loss += std::max(0.0, a.dot(monomials(n, x)) + margin_init);
  }
  for (const auto& x : samples_unsafe) {
    loss += std::max(0.0, margin_init - a.dot(monomials(n, x)));
  }
  for (const auto& x : samples_domain) {
    if (std::abs(a.dot(monomials(n, x))) > zero_band) continue;
    const Eigen::VectorXd psi = lie_monomials(n, x, model.field(x, control));
    loss += std::max(0.0, a.dot(psi) + margin_lie);
  }
  return loss;
}

QuadraticCertificate seed_from(const std::optional<SynthesisResult>& previous,
                               int dim, std::uint64_t rng_seed) {
  if (previous) return previous->cert;
  Rng rng(rng_seed);
  Eigen::VectorXd coeffs(QuadraticCertificate::coeff_count(dim));
  for (int i = 0; i < coeffs.size(); ++i) coeffs[i] = rng.uniform(-0.1, 0.1);
  return QuadraticCertificate(dim, std::move(coeffs));
}

SynthesisResult cegis(const SystemModel& model,
                      const std::optional<ControlInput>& control,
                      const HyperBox& init, const UnsafeSpec& unsafe,
                      const OctagonRegion& working,
                      const SynthesisConfig& config,
                      const RoundLogger& logger) {
  if (config.sample_count < 1 || config.learner_steps < 0 ||
      config.max_cegis_rounds < 1 || config.eps_schedule.empty()) {
    throw std::invalid_argument("cegis: bad config");
  }
  for (const auto& corner : init.corners()) {
    if (!octagon_membership(corner, working)) {
      throw std::invalid_argument("cegis: init not contained in working region");
    }
  }

  Rng rng(config.rng_seed);
  QuadraticCertificate cert =
      config.seed_coeffs
          ? *config.seed_coeffs
          : seed_from(std::nullopt, model.n, config.rng_seed ^ 0xc2b2ae3d27d4eb4full);

  BoxListSampler unsafe_sampler(unsafe_boxes(unsafe, working));
  const HyperBox working_box = working.bounding_box();

  std::vector<Eigen::VectorXd> ce_init, ce_unsafe, ce_domain;

  VerificationProblem problem{model,   control, cert,         init,
                              unsafe,  working, config.gamma, config.budget};

  SynthesisResult result;
  result.cert = cert;
  for (int round = 1; round <= config.max_cegis_rounds; ++round) {
    std::vector<Eigen::VectorXd> samples_init = ce_init;
    std::vector<Eigen::VectorXd> samples_unsafe = ce_unsafe;
    std::vector<Eigen::VectorXd> samples_domain = ce_domain;
    for (int s = 0; s < config.sample_count; ++s) {
      samples_init.push_back(sample_in_box(init, rng));
    }
    if (!unsafe_sampler.empty()) {
      for (int s = 0; s < config.sample_count; ++s) {
        samples_unsafe.push_back(unsafe_sampler.draw(rng));
      }
    }
    for (int s = 0; s < config.sample_count; ++s) {
      if (auto p = sample_in_octagon(working, working_box, rng)) {
        samples_domain.push_back(std::move(*p));
      }
    }

    for (int step = 0; step < config.learner_steps; ++step) {
      cert = learner_step(cert, samples_init, samples_unsafe, samples_domain,
                          model, control, config.learner_rate,
                          config.margin_init, config.margin_lie,
                          config.zero_band);
    }

    problem.cert = cert;
    const VerificationOutcome outcome = certify(problem);

    if (logger) {
      RoundRecord record;
      record.round = round;
      record.loss = learner_loss(cert, samples_init, samples_unsafe,
                                 samples_domain, model, control,
                                 config.margin_init, config.margin_lie,
                                 config.zero_band);
      record.counterexamples_added =
          outcome.status == VerificationStatus::Counterexample ? 1 : 0;
      record.verifier_status = outcome.status;
      logger(record);
    }

    result.cert = cert;
    result.rounds = round;
    if (outcome.status == VerificationStatus::Valid) {
      result.verified = true;
      return result;
    }
    if (outcome.status == VerificationStatus::Counterexample) {
      switch (*outcome.violated) {
        case ConditionKind::InitCondition:
          ce_init.push_back(*outcome.witness);
          break;
        case ConditionKind::UnsafeCondition:
          ce_unsafe.push_back(*outcome.witness);
          break;
        case ConditionKind::LieCondition:
          ce_domain.push_back(*outcome.witness);
          break;
      }
    }
  }
  result.verified = false;
  return result;
}

SynthesisResult synthesize_with_bloating(
    const SystemModel& model, const std::optional<ControlInput>& control,
    const HyperBox& init, const WorkingRegionSpec& region_spec,
    const SynthesisConfig& config, const RoundLogger& logger) {
  if (config.eps_schedule.empty()) {
    throw std::invalid_argument("synthesize_with_bloating: empty eps schedule");
  }
  SynthesisConfig attempt_config = config;
  SynthesisResult result;
  for (double eps : config.eps_schedule) {
    WorkingRegionSpec spec = region_spec;
    spec.eps = eps;
    auto [working, complement] =
        build_working_region(model, control, init, spec, config.rng_seed);
    result = cegis(model, control, init, UnsafeSpec{complement}, working,
                   attempt_config, logger);
    result.eps_used = eps;
    if (result.verified) return result;
    // Bloating retry: continue the search from where the last attempt left
    // off rather than re-randomizing.
    attempt_config.seed_coeffs = result.cert;
  }
  return result;
}

std::vector<QuadraticCertificate> augment(const QuadraticCertificate& cert,
                                          double sigma, int count,
                                          const VerificationProblem& context,
                                          std::uint64_t rng_seed) {
  if (sigma < 0.0) throw std::invalid_argument("augment: negative sigma");
  Rng rng(rng_seed);
  std::vector<QuadraticCertificate> kept;
  VerificationProblem problem = context;
  for (int k = 0; k < count; ++k) {
    Eigen::VectorXd scaled = cert.coeffs();
    for (int i = 0; i < scaled.size(); ++i) {
      scaled[i] *= rng.normal(1.0, sigma);
    }
    QuadraticCertificate candidate(cert.dim(), std::move(scaled));
    problem.cert = candidate;
    if (certify(problem).status == VerificationStatus::Valid) {
      kept.push_back(std::move(candidate));
    }
  }
  return kept;
}

}  // namespace barrier_reach
