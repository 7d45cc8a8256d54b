#pragma once

#include <functional>

#include "barrier_reach/pipeline.hpp"
#include "barrier_reach/verifier.hpp"

namespace barrier_reach {

struct SynthesisConfig {
  int sample_count = 500;      // per region per round
  double learner_rate = 1e-4;
  int learner_steps = 400;     // per CEGIS round
  int max_cegis_rounds = 20;
  std::optional<QuadraticCertificate> seed_coeffs;
  std::vector<double> eps_schedule = {0.1, 0.2, 0.4};
  std::uint64_t rng_seed = 0;
  double margin_init = 0.05;   // m  in the soft loss
  double margin_lie = 0.05;    // m' in the soft loss
  double zero_band = 0.1;      // |B| window selecting Lie samples
  double gamma = kDefaultGamma;
  long budget = kOfflineBudget;
};

struct SynthesisResult {
  QuadraticCertificate cert;
  double eps_used = 0.0;
  int rounds = 0;
  bool verified = false;
};

struct RoundRecord {
  int round = 0;
  double loss = 0.0;
  int counterexamples_added = 0;
  VerificationStatus verifier_status = VerificationStatus::Unknown;
};
using RoundLogger = std::function<void(const RoundRecord&)>;

/// One subgradient step on
///   L = sum_init relu(B(x)+m) + sum_unsafe relu(m-B(x))
///     + sum_{|B|<=band} relu(Bdot(x)+m'),
/// which is piecewise linear in the coefficients for fixed samples.
QuadraticCertificate learner_step(
    const QuadraticCertificate& cert,
    const std::vector<Eigen::VectorXd>& samples_init,
    const std::vector<Eigen::VectorXd>& samples_unsafe,
    const std::vector<Eigen::VectorXd>& samples_domain,
    const SystemModel& model, const std::optional<ControlInput>& control,
    double rate, double margin_init = 0.05, double margin_lie = 0.05,
    double zero_band = 0.1);

double learner_loss(const QuadraticCertificate& cert,
                    const std::vector<Eigen::VectorXd>& samples_init,
                    const std::vector<Eigen::VectorXd>& samples_unsafe,
                    const std::vector<Eigen::VectorXd>& samples_domain,
                    const SystemModel& model,
                    const std::optional<ControlInput>& control,
                    double margin_init = 0.05, double margin_lie = 0.05,
                    double zero_band = 0.1);

/// Alternate learner epochs with sound certification; verifier witnesses
/// are appended to the sample set of the violated condition.
SynthesisResult cegis(const SystemModel& model,
                      const std::optional<ControlInput>& control,
                      const HyperBox& init, const UnsafeSpec& unsafe,
                      const OctagonRegion& working,
                      const SynthesisConfig& config,
                      const RoundLogger& logger = nullptr);

/// Build the working region at each bloating level in turn and run cegis
/// until a certificate verifies; the caller treats a fully failed schedule
/// as locally unsafe.
SynthesisResult synthesize_with_bloating(
    const SystemModel& model, const std::optional<ControlInput>& control,
    const HyperBox& init, const WorkingRegionSpec& region_spec,
    const SynthesisConfig& config, const RoundLogger& logger = nullptr);

/// Previous solution if any (verified or not), otherwise small random
/// coefficients drawn deterministically from the seed.
QuadraticCertificate seed_from(const std::optional<SynthesisResult>& previous,
                               int dim, std::uint64_t rng_seed);

/// Multiplicative-noise perturbations a .* c with c ~ N(1, sigma^2),
/// keeping only candidates the verifier re-certifies.
std::vector<QuadraticCertificate> augment(const QuadraticCertificate& cert,
                                          double sigma, int count,
                                          const VerificationProblem& context,
                                          std::uint64_t rng_seed);

}  // namespace barrier_reach
