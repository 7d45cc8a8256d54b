#include "barrier_reach/metann.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "barrier_reach/rng.hpp"

namespace barrier_reach {

namespace {

constexpr double kTwoPi = 2.0 * 3.14159265358979323846;

// Trained input domains; encode_initial_set refuses anything outside.
constexpr double kLinearCenterBound = 2.5;
constexpr double kMaxHalfWidth = 0.5;
constexpr double kCarSpeedLo = 1.5, kCarSpeedHi = 10.0;
constexpr double kCarOmegaHi = 0.125;
constexpr double kCarThetaHi = 6.5;

void check(bool ok, const char* message) {
  if (!ok) throw std::invalid_argument(message);
}

}  // namespace

Mlp make_mlp(const std::vector<int>& layer_sizes, std::uint64_t rng_seed,
             std::string encoding_id) {
  if (layer_sizes.size() < 2) {
    throw std::invalid_argument("make_mlp: need at least input and output");
  }
  Rng rng(rng_seed);
  Mlp net;
  net.layer_sizes = layer_sizes;
  net.encoding_id = std::move(encoding_id);
  for (std::size_t i = 0; i + 1 < layer_sizes.size(); ++i) {
    const int fan_in = layer_sizes[i];
    const int fan_out = layer_sizes[i + 1];
    const double scale = std::sqrt(6.0 / (fan_in + fan_out));
    Eigen::MatrixXd w(fan_out, fan_in);
    for (int r = 0; r < fan_out; ++r) {
      for (int c = 0; c < fan_in; ++c) w(r, c) = rng.uniform(-scale, scale);
    }
    net.weights.push_back(std::move(w));
    net.biases.push_back(Eigen::VectorXd::Zero(fan_out));
  }
  return net;
}

Eigen::VectorXd forward(const Mlp& net, const Eigen::VectorXd& input) {
  if (input.size() != net.layer_sizes.front()) {
    throw std::invalid_argument("forward: input width mismatch");
  }
  Eigen::VectorXd z = input;
  for (std::size_t i = 0; i < net.weights.size(); ++i) {
    z = net.weights[i] * z + net.biases[i];
    if (i + 1 < net.weights.size()) z = z.cwiseMax(0.0);
  }
  return z;
}

double l1_loss(const Mlp& net, const std::vector<TrainingPair>& batch) {
  if (batch.empty()) throw std::invalid_argument("l1_loss: empty batch");
  double total = 0.0;
  for (const auto& pair : batch) {
    total += (forward(net, pair.input) - pair.target).lpNorm<1>();
  }
  return total / static_cast<double>(batch.size());
}

namespace {

// Accumulate the L1-loss gradient of one pair into grad_w / grad_b.
double backprop_pair(const Mlp& net, const TrainingPair& pair,
                     std::vector<Eigen::MatrixXd>& grad_w,
                     std::vector<Eigen::VectorXd>& grad_b) {
  const std::size_t layers = net.weights.size();
  std::vector<Eigen::VectorXd> activations(layers + 1);
  std::vector<Eigen::VectorXd> pre(layers);
  activations[0] = pair.input;
  for (std::size_t i = 0; i < layers; ++i) {
    pre[i] = net.weights[i] * activations[i] + net.biases[i];
    activations[i + 1] = (i + 1 < layers) ? pre[i].cwiseMax(0.0) : pre[i];
  }
  const Eigen::VectorXd diff = activations[layers] - pair.target;
  Eigen::VectorXd delta = diff.unaryExpr(
      [](double d) { return d > 0.0 ? 1.0 : (d < 0.0 ? -1.0 : 0.0); });
  for (std::size_t i = layers; i-- > 0;) {
    grad_w[i] += delta * activations[i].transpose();
    grad_b[i] += delta;
    if (i > 0) {
      delta = net.weights[i].transpose() * delta;
      for (int k = 0; k < delta.size(); ++k) {
        if (pre[i - 1][k] <= 0.0) delta[k] = 0.0;
      }
    }
  }
  return diff.lpNorm<1>();
}

}  // namespace

TrainResult train(const Mlp& net, const Dataset& dataset,
                  const TrainOptions& options) {
  if (dataset.pairs.empty()) throw std::invalid_argument("train: empty dataset");
  TrainResult result;
  result.net = net;
  if (options.epochs <= 0) return result;

  Rng rng(options.rng_seed);
  const int count = static_cast<int>(dataset.pairs.size());
  const int batch_size = std::max(1, std::min(options.batch_size, count));
  std::vector<int> order(count);
  for (int i = 0; i < count; ++i) order[i] = i;

  double rate = options.rate;
  double best_loss = std::numeric_limits<double>::infinity();
  int best_epoch = 0;

  std::vector<Eigen::MatrixXd> grad_w;
  std::vector<Eigen::VectorXd> grad_b;
  for (const auto& w : net.weights) grad_w.push_back(Eigen::MatrixXd::Zero(w.rows(), w.cols()));
  for (const auto& b : net.biases) grad_b.push_back(Eigen::VectorXd::Zero(b.size()));

  for (int epoch = 0; epoch < options.epochs; ++epoch) {
    // Fisher-Yates shuffle off the seeded stream.
    for (int i = count - 1; i > 0; --i) {
      std::swap(order[i], order[rng.uniform_int(0, i)]);
    }
    double epoch_loss = 0.0;
    for (int begin = 0; begin < count; begin += batch_size) {
      const int end = std::min(begin + batch_size, count);
      for (auto& g : grad_w) g.setZero();
      for (auto& g : grad_b) g.setZero();
      double batch_loss = 0.0;
      for (int k = begin; k < end; ++k) {
        batch_loss += backprop_pair(result.net, dataset.pairs[order[k]], grad_w, grad_b);
      }
      const double inv = 1.0 / static_cast<double>(end - begin);
      for (std::size_t i = 0; i < grad_w.size(); ++i) {
        result.net.weights[i] -= rate * inv * grad_w[i];
        result.net.biases[i] -= rate * inv * grad_b[i];
      }
      epoch_loss += batch_loss;
    }
    epoch_loss /= static_cast<double>(count);
    result.loss_history.push_back(epoch_loss);

    if (epoch_loss < best_loss - 1e-12) {
      best_loss = epoch_loss;
      best_epoch = epoch;
    } else if (epoch - best_epoch >= options.plateau_patience &&
               rate > options.min_rate) {
      rate = std::max(options.min_rate, 0.5 * rate);
      best_epoch = epoch;
    }
  }
  return result;
}

TrainResult train(const Mlp& net, const Dataset& dataset, int epochs,
                  double rate, int batch_size, std::uint64_t rng_seed) {
  TrainOptions options;
  options.epochs = epochs;
  options.rate = rate;
  options.batch_size = batch_size;
  options.rng_seed = rng_seed;
  return train(net, dataset, options);
}

std::string encoding_id_for(const SystemModel& model) {
  return model.control_arity > 0 ? "car-frame-v1" : "box-center-hw-v1";
}

int encoded_input_width(const SystemModel& model) {
  return model.control_arity > 0 ? 3 + model.n : 2 * model.n;
}

EncodedInput encode_initial_set(const SystemModel& model, const HyperBox& init,
                                const std::optional<ControlInput>& control) {
  if (init.dim() != model.n) {
    throw std::invalid_argument("encode_initial_set: dimension mismatch");
  }
  const Eigen::VectorXd center = init.center();
  const Eigen::VectorXd hw = init.half_widths();
  EncodedInput out;

  if (model.control_arity == 0) {
    for (int i = 0; i < model.n; ++i) {
      check(std::abs(center[i]) <= kLinearCenterBound,
            "encode_initial_set: center outside trained domain");
      check(hw[i] <= kMaxHalfWidth,
            "encode_initial_set: half-width outside trained domain");
    }
    out.input.resize(2 * model.n);
    out.input << center, hw;
    out.decode_shift = Eigen::VectorXd::Zero(model.n);
    return out;
  }

  check(control.has_value(), "encode_initial_set: car requires a control");
  check(model.n == 3, "encode_initial_set: expected car state");
  const double v = control->v;
  double omega = control->omega;
  double theta_center = center[2];

  out.reflected = omega < 0.0;
  if (out.reflected) {
    omega = -omega;
    theta_center = -theta_center;
  }
  // Heading shift by whole turns: the dynamics are 2pi-periodic in theta,
  // so the certificate frame can always use a center in [0, 2pi).
  const double turns = std::floor(theta_center / kTwoPi);
  theta_center -= turns * kTwoPi;

  check(v >= kCarSpeedLo && v <= kCarSpeedHi,
        "encode_initial_set: speed outside trained domain");
  check(omega <= kCarOmegaHi, "encode_initial_set: omega outside trained domain");
  check(theta_center >= 0.0 && theta_center <= kCarThetaHi,
        "encode_initial_set: theta outside trained domain");
  for (int i = 0; i < 3; ++i) {
    check(hw[i] <= kMaxHalfWidth,
          "encode_initial_set: half-width outside trained domain");
  }

  out.input.resize(6);
  out.input << v, omega, theta_center, hw[0], hw[1], hw[2];
  out.decode_shift = Eigen::Vector3d(
      center[0], out.reflected ? -center[1] : center[1], turns * kTwoPi);
  return out;
}

QuadraticCertificate decode_certificate(const SystemModel& model,
                                        const Eigen::VectorXd& net_output,
                                        const EncodedInput& encoded) {
  QuadraticCertificate cert(model.n, net_output);
  if (encoded.decode_shift.size() != model.n) {
    throw std::invalid_argument("decode_certificate: bad shift");
  }
  cert = substitute_shift(cert, encoded.decode_shift);
  if (encoded.reflected) cert = negate_axes(cert, {1, 2});
  return cert;
}

Dataset generate_dataset(const SystemModel& model,
                         const std::vector<SweepCase>& sweep,
                         const WorkingRegionSpec& region_spec,
                         const SynthesisConfig& synth, double augment_sigma,
                         int augment_count, GenerationReport* report,
                         const RoundLogger& logger) {
  Dataset dataset;
  dataset.encoding_id = encoding_id_for(model);
  dataset.model_id = model.id;

  std::optional<SynthesisResult> previous;
  int index = 0;
  for (const SweepCase& item : sweep) {
    if (report) ++report->attempted;
    SynthesisConfig config = synth;
    config.rng_seed = synth.rng_seed + static_cast<std::uint64_t>(index);
    config.seed_coeffs = seed_from(previous, model.n, config.rng_seed);
    SynthesisResult result;
    bool failed = false;
    try {
      result = synthesize_with_bloating(model, item.control, item.init,
                                        region_spec, config, logger);
    } catch (const std::exception&) {
      failed = true;
    }
    if (!failed) previous = result;
    if (failed || !result.verified) {
      if (report) report->missed_cases.push_back(index);
      ++index;
      continue;
    }
    if (report) ++report->synthesized;

    const EncodedInput encoded =
        encode_initial_set(model, item.init, item.control);
    dataset.pairs.push_back({encoded.input, result.cert.coeffs()});

    if (augment_count > 0) {
      WorkingRegionSpec spec = region_spec;
      spec.eps = result.eps_used;
      auto [working, complement] = build_working_region(
          model, item.control, item.init, spec, config.rng_seed);
      VerificationProblem context{model,
                                  item.control,
                                  result.cert,
                                  item.init,
                                  UnsafeSpec{complement},
                                  working,
                                  synth.gamma,
                                  synth.budget};
      const auto kept = augment(result.cert, augment_sigma, augment_count,
                                context, config.rng_seed ^ 0xa076bc5f3ull);
      for (const auto& extra : kept) {
        dataset.pairs.push_back({encoded.input, extra.coeffs()});
      }
    }
    ++index;
  }
  return dataset;
}

Mlp refine(const Mlp& net, Dataset& dataset, const TrainingPair& pair,
           const VerificationProblem& problem, int fine_tune_epochs,
           double rate, std::uint64_t rng_seed) {
  VerificationProblem check_problem = problem;
  check_problem.cert = QuadraticCertificate(problem.model.n, pair.target);
  if (certify(check_problem).status != VerificationStatus::Valid) {
    throw std::invalid_argument("refine: certificate does not verify");
  }
  dataset.pairs.push_back(pair);
  if (fine_tune_epochs <= 0) return net;
  TrainOptions options;
  options.epochs = fine_tune_epochs;
  options.rate = rate;
  options.batch_size = 32;
  options.rng_seed = rng_seed;
  return train(net, dataset, options).net;
}

}  // namespace barrier_reach
