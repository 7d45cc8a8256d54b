#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "barrier_reach/synthesis.hpp"

namespace barrier_reach {

/// Fully connected ReLU network (identity output layer). weights[i] maps
/// layer i activations to layer i+1 pre-activations, so layer_sizes has
/// one more entry than weights.
struct Mlp {
  std::vector<int> layer_sizes;
  std::vector<Eigen::MatrixXd> weights;
  std::vector<Eigen::VectorXd> biases;
  std::string encoding_id;
};

Mlp make_mlp(const std::vector<int>& layer_sizes, std::uint64_t rng_seed,
             std::string encoding_id = "");

Eigen::VectorXd forward(const Mlp& net, const Eigen::VectorXd& input);

struct TrainingPair {
  Eigen::VectorXd input;
  Eigen::VectorXd target;
};

struct Dataset {
  std::vector<TrainingPair> pairs;
  std::string encoding_id;
  std::string model_id;
};

/// Mean over the batch of the summed absolute coefficient errors.
double l1_loss(const Mlp& net, const std::vector<TrainingPair>& batch);

struct TrainOptions {
  int epochs = 20000;
  double rate = 1e-3;
  int batch_size = 32;
  std::uint64_t rng_seed = 0;
  int plateau_patience = 500;  // epochs without improvement before halving
  double min_rate = 1e-6;
};

struct TrainResult {
  Mlp net;
  std::vector<double> loss_history;  // mean batch loss per epoch
};

/// Mini-batch gradient descent with analytic backpropagation (ReLU
/// subgradient 0 at 0) and rate halving on plateau. Deterministic for a
/// fixed seed.
TrainResult train(const Mlp& net, const Dataset& dataset,
                  const TrainOptions& options);
TrainResult train(const Mlp& net, const Dataset& dataset, int epochs,
                  double rate, int batch_size, std::uint64_t rng_seed);

/// Normalized problem frame of one initial set. For the car the input is
/// expressed with the position center shifted to the origin, omega
/// reflected nonnegative and the heading center wrapped into [0, 2pi);
/// `reflected` and `decode_shift` carry what it takes to map a certificate
/// predicted in that frame back to world coordinates.
struct EncodedInput {
  Eigen::VectorXd input;
  bool reflected = false;
  Eigen::VectorXd decode_shift;
};

/// Autonomous systems: [center; half-widths]. Car: [v, |omega|,
/// theta-center, half-widths] in the normalized frame. Throws when the
/// parameters fall outside the trained domain.
EncodedInput encode_initial_set(const SystemModel& model, const HyperBox& init,
                                const std::optional<ControlInput>& control);

/// Map a network output back to world coordinates (reflection sign flips,
/// then the recorded shift).
QuadraticCertificate decode_certificate(const SystemModel& model,
                                        const Eigen::VectorXd& net_output,
                                        const EncodedInput& encoded);

std::string encoding_id_for(const SystemModel& model);
int encoded_input_width(const SystemModel& model);

struct SweepCase {
  HyperBox init;
  std::optional<ControlInput> control;
};

struct GenerationReport {
  int attempted = 0;
  int synthesized = 0;
  std::vector<int> missed_cases;
};

/// Walk the sweep in order, synthesizing a certificate per case with the
/// previous solution as seed; verified augmentations of each success are
/// stored alongside it. Misses are recorded, never fatal.
Dataset generate_dataset(const SystemModel& model,
                         const std::vector<SweepCase>& sweep,
                         const WorkingRegionSpec& region_spec,
                         const SynthesisConfig& synth, double augment_sigma,
                         int augment_count, GenerationReport* report = nullptr,
                         const RoundLogger& logger = nullptr);

/// Re-verify the certificate for the given problem, append the pair to the
/// dataset and run a bounded fine-tuning pass.
Mlp refine(const Mlp& net, Dataset& dataset, const TrainingPair& pair,
           const VerificationProblem& problem, int fine_tune_epochs,
           double rate, std::uint64_t rng_seed);

}  // namespace barrier_reach
