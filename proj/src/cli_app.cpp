#include "barrier_reach/cli_app.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "barrier_reach/json_io.hpp"
#include "barrier_reach/presets.hpp"
#include "barrier_reach/svg.hpp"

namespace fs = std::filesystem;

namespace barrier_reach {

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitRateNotMet = 3;

double now_seconds() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

std::string format17(double v) {
  char buf[32];
  const auto res =
      std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

Eigen::VectorXd parse_vector(const std::string& csv) {
  std::vector<double> values;
  std::size_t begin = 0;
  while (begin <= csv.size()) {
    const std::size_t comma = csv.find(',', begin);
    const std::string token =
        csv.substr(begin, comma == std::string::npos ? csv.size() - begin
                                                     : comma - begin);
    if (!token.empty()) values.push_back(std::stod(token));
    if (comma == std::string::npos) break;
    begin = comma + 1;
  }
  return Eigen::Map<const Eigen::VectorXd>(values.data(), values.size());
}

std::pair<double, double> wilson_interval(int successes, int n) {
  if (n == 0) return {0.0, 1.0};
  const double z = 1.959963984540054;  // 95%
  const double p = static_cast<double>(successes) / n;
  const double z2n = z * z / n;
  const double denom = 1.0 + z2n;
  const double center = (p + 0.5 * z2n) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + 0.25 * z2n / n) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

// Projection of a car-state octagon onto the (x, y) plane: keep the
// offsets of every direction touching only the first two axes.
OctagonRegion project_xy(const OctagonRegion& region) {
  if (region.dim() == 2) return region;
  Eigen::VectorXd offsets(8);
  offsets << region.offset(0), region.offset(1), region.offset(2),
      region.offset(3), region.offset(6), region.offset(7), region.offset(8),
      region.offset(9);
  return OctagonRegion(2, std::move(offsets));
}

struct CommonOpts {
  std::string out = "out";
  std::uint64_t seed = 0;
  int threads = 1;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool seed_required) {
  cmd->add_option("--out", opts.out, "Output directory");
  auto* seed_opt = cmd->add_option("--seed", opts.seed, "RNG seed");
  if (seed_required) seed_opt->required();
  cmd->add_option("--threads", opts.threads, "Worker threads (1 = deterministic)")
      ->envname("BARRIER_REACH_THREADS")
      ->check(CLI::PositiveNumber);
}

// JSON config files: top-level keys name subcommands, nested keys name
// their options ({"gen-data": {"model": "lin-real"}}). Explicit flags win.
class JsonConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App*, bool, bool,
                        std::string) const override {
    return "{}\n";
  }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    json j;
    input >> j;
    std::vector<CLI::ConfigItem> items;
    for (const auto& [key, value] : j.items()) {
      if (value.is_object()) {
        for (const auto& [name, scalar] : value.items()) {
          items.push_back(make_item({key}, name, scalar));
        }
      } else {
        items.push_back(make_item({}, key, value));
      }
    }
    return items;
  }

 private:
  static CLI::ConfigItem make_item(std::vector<std::string> parents,
                                   const std::string& name, const json& value) {
    CLI::ConfigItem item;
    item.parents = std::move(parents);
    item.name = name;
    if (value.is_array()) {
      for (const auto& entry : value) item.inputs.push_back(scalar_text(entry));
    } else {
      item.inputs.push_back(scalar_text(value));
    }
    return item;
  }

  static std::string scalar_text(const json& value) {
    return value.is_string() ? value.get<std::string>() : value.dump();
  }
};

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

// ---------------------------------------------------------------- simulate

struct SimulateOpts {
  CommonOpts common;
  std::string model_id = "lin-real";
  std::string center_csv, half_width_csv;
  double horizon = -1.0;
  double step = 0.01;
  int samples = 10;
  double v = 2.0, omega = 0.05;
};

int run_simulate(const SimulateOpts& opts) {
  const SystemModel model = model_by_id(opts.model_id);

  Eigen::VectorXd center, hw;
  if (!opts.center_csv.empty()) {
    center = parse_vector(opts.center_csv);
  } else if (model.control_arity > 0) {
    center = Eigen::Vector3d(0.0, 0.0, 0.0);
  } else {
    center = Eigen::Vector2d(1.0, 0.0);
  }
  if (!opts.half_width_csv.empty()) {
    hw = parse_vector(opts.half_width_csv);
  } else if (model.control_arity > 0) {
    hw = Eigen::Vector3d(0.05, 0.05, 0.02);
  } else {
    hw = Eigen::Vector2d(0.1, 0.1);
  }
  if (center.size() != model.n || hw.size() != model.n) {
    std::cerr << "simulate: center/half-width dimension mismatch\n";
    return kExitUsage;
  }
  const HyperBox init(center - hw, center + hw);
  const double horizon =
      opts.horizon >= 0.0 ? opts.horizon
                          : desk_region_spec(model).horizon;
  const std::optional<ControlInput> control =
      model.control_arity > 0
          ? std::optional<ControlInput>(ControlInput{opts.v, opts.omega})
          : std::nullopt;

  fs::create_directories(opts.common.out);
  std::vector<Eigen::VectorXd> starts = init.corners();
  Rng rng(opts.common.seed);
  for (int s = 0; s < opts.samples; ++s) {
    Eigen::VectorXd p(model.n);
    for (int i = 0; i < model.n; ++i) {
      p[i] = rng.uniform(init.lower[i], init.upper[i]);
    }
    starts.push_back(std::move(p));
  }

  std::vector<Trajectory> trajectories;
  for (std::size_t k = 0; k < starts.size(); ++k) {
    Trajectory tr;
    if (horizon == 0.0) {
      tr.times = {0.0};
      tr.states = {starts[k]};
      tr.control = control;
    } else {
      tr = integrate(model, starts[k], control, horizon, opts.step);
    }
    char name[64];
    std::snprintf(name, sizeof(name), "trajectory_%03zu.csv", k);
    std::ofstream out(fs::path(opts.common.out) / name);
    write_trajectory_csv(out, tr);
    trajectories.push_back(std::move(tr));
  }

  double min_x = init.lower[0], max_x = init.upper[0];
  double min_y = init.lower[1], max_y = init.upper[1];
  for (const auto& tr : trajectories) {
    for (const auto& x : tr.states) {
      min_x = std::min(min_x, x[0]);
      max_x = std::max(max_x, x[0]);
      min_y = std::min(min_y, x[1]);
      max_y = std::max(max_y, x[1]);
    }
  }
  const double margin = 0.1 * std::max(max_x - min_x, max_y - min_y) + 1e-6;
  SvgCanvas canvas(min_x - margin, min_y - margin, max_x + margin,
                   max_y + margin);
  canvas.rect(init.lower[0], init.lower[1], init.upper[0], init.upper[1],
              "steelblue", 0.35, "steelblue");
  for (const auto& tr : trajectories) {
    std::vector<Eigen::Vector2d> pts;
    pts.reserve(tr.states.size());
    for (const auto& x : tr.states) pts.emplace_back(x[0], x[1]);
    canvas.polyline(pts, "green", 1.0);
  }
  canvas.save((fs::path(opts.common.out) / "simulate.svg").string());
  std::cout << "simulate: " << starts.size() << " trajectories -> "
            << opts.common.out << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------- gen-data

struct GenDataOpts {
  CommonOpts common;
  std::string model_id = "lin-real";
  int limit = -1;
  int grid = 5;
  int theta_count = 11;
  double augment_sigma = 0.05;
  int augment_count = 2;
};

int run_gen_data(const GenDataOpts& opts) {
  const SystemModel model = model_by_id(opts.model_id);
  std::vector<SweepCase> sweep = model.control_arity > 0
                                     ? car_sweep({1.5, 2.0, 2.5},
                                                 {0.0, 0.04, 0.08, 0.12},
                                                 opts.theta_count)
                                     : linear_sweep(model, opts.grid);
  if (opts.limit >= 0 && opts.limit < static_cast<int>(sweep.size())) {
    sweep.resize(opts.limit);
  }

  SynthesisConfig config = desk_synthesis_config(model);
  config.rng_seed = opts.common.seed;

  fs::create_directories(opts.common.out);
  std::ofstream log_file(fs::path(opts.common.out) / "synth_log.jsonl");
  RoundLogger logger = [&log_file](const RoundRecord& record) {
    log_file << round_record_to_json(record).dump() << "\n";
  };

  GenerationReport report;
  const Dataset dataset = generate_dataset(
      model, sweep, desk_region_spec(model), config, opts.augment_sigma,
      opts.augment_count, &report, logger);
  save_dataset((fs::path(opts.common.out) / "dataset.jsonl").string(), dataset);
  save_json((fs::path(opts.common.out) / "misses.json").string(),
            json{{"attempted", report.attempted},
                 {"synthesized", report.synthesized},
                 {"missed_cases", report.missed_cases},
                 {"pairs", dataset.pairs.size()}});
  std::cout << "gen-data: " << report.synthesized << "/" << report.attempted
            << " sets synthesized, " << dataset.pairs.size() << " pairs -> "
            << opts.common.out << "\n";
  return kExitOk;
}

// ------------------------------------------------------------------- train

struct TrainOpts {
  CommonOpts common;
  std::string dataset_path;
  int epochs = 20000;
  double rate = 1e-3;
  int batch = 32;
  int hidden = 64;
};

int run_train(const TrainOpts& opts) {
  const Dataset dataset = load_dataset(opts.dataset_path);
  if (dataset.pairs.empty()) {
    std::cerr << "train: dataset has no pairs\n";
    return kExitUsage;
  }
  const int in_width = static_cast<int>(dataset.pairs.front().input.size());
  const int out_width = static_cast<int>(dataset.pairs.front().target.size());
  Mlp net = make_mlp({in_width, opts.hidden, opts.hidden, out_width},
                     opts.common.seed, dataset.encoding_id);
  TrainOptions options;
  options.epochs = opts.epochs;
  options.rate = opts.rate;
  options.batch_size = opts.batch;
  options.rng_seed = opts.common.seed;
  const TrainResult result = train(net, dataset, options);

  fs::create_directories(opts.common.out);
  save_mlp((fs::path(opts.common.out) / "model.json").string(), result.net);
  std::string curve = "epoch,loss\n";
  for (std::size_t e = 0; e < result.loss_history.size(); ++e) {
    curve += std::to_string(e) + "," + format17(result.loss_history[e]) + "\n";
  }
  write_text((fs::path(opts.common.out) / "losscurve.csv").string(), curve);
  std::cout << "train: final loss "
            << (result.loss_history.empty() ? 0.0 : result.loss_history.back())
            << " -> " << opts.common.out << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------- validate

struct ValidateOpts {
  CommonOpts common;
  std::string model_id = "lin-real";
  std::string net_path;
  int n_test = 100;
  long budget = kOfflineBudget;
  double assert_rate = -1.0;
};

int run_validate(const ValidateOpts& opts) {
  if (opts.n_test <= 0) {
    std::cerr << "validate: n_test must be positive\n";
    return kExitUsage;
  }
  const SystemModel model = model_by_id(opts.model_id);
  const Mlp net = load_mlp(opts.net_path);
  const WorkingRegionSpec region_spec = desk_region_spec(model);

  Rng rng(opts.common.seed);
  int successes = 0;
  json cases = json::array();
  std::string times = "case,wall_s\n";
  for (int k = 0; k < opts.n_test; ++k) {
    SweepCase item;
    if (model.control_arity > 0) {
      item = sample_car_case(rng);
    } else {
      item = {sample_linear_initial_set(rng), std::nullopt};
    }
    const double t0 = now_seconds();
    std::string status = "error";
    long boxes = 0;
    try {
      auto [working, complement] = build_working_region(
          model, item.control, item.init, region_spec,
          opts.common.seed + 1000003ull * (k + 1), opts.common.threads);
      const EncodedInput encoded =
          encode_initial_set(model, item.init, item.control);
      const QuadraticCertificate cert =
          decode_certificate(model, forward(net, encoded.input), encoded);
      // Validation checks the candidate within the working region for the
      // given initial set and an empty unsafe set.
      VerificationProblem problem{model,
                                  item.control,
                                  cert,
                                  item.init,
                                  UnsafeSpec{std::vector<HyperBox>{}},
                                  working,
                                  kDefaultGamma,
                                  opts.budget};
      const VerificationOutcome outcome = certify(problem);
      status = status_name(outcome.status);
      boxes = outcome.boxes_explored;
      if (outcome.status == VerificationStatus::Valid) ++successes;
    } catch (const std::exception&) {
      status = "error";
    }
    cases.push_back(json{{"case", k}, {"status", status}, {"boxes_explored", boxes}});
    times += std::to_string(k) + "," + format17(now_seconds() - t0) + "\n";
  }

  const double rate = static_cast<double>(successes) / opts.n_test;
  const auto [wlo, whi] = wilson_interval(successes, opts.n_test);
  fs::create_directories(opts.common.out);
  save_json((fs::path(opts.common.out) / "report.json").string(),
            json{{"model", model.id},
                 {"n_test", opts.n_test},
                 {"successes", successes},
                 {"rate", rate},
                 {"wilson95", {wlo, whi}},
                 {"cases", cases}});
  write_text((fs::path(opts.common.out) / "report_times.csv").string(), times);
  std::cout << "validate: success rate " << rate << " (95% Wilson [" << wlo
            << ", " << whi << "]) over " << opts.n_test << " sets\n";
  if (opts.assert_rate >= 0.0 && rate < opts.assert_rate) return kExitRateNotMet;
  return kExitOk;
}

// -------------------------------------------------------------------- plan

struct PlanOpts {
  CommonOpts common;
  std::string scenario_path;
  std::string net_path;
  long budget = kOnlineBudget;
};

void render_scene(const Scenario& scenario, const PlanResult& result,
                  const std::string& path) {
  double min_x = scenario.target.lower[0], max_x = scenario.start.upper[0];
  double min_y = scenario.target.lower[1], max_y = scenario.start.upper[1];
  auto grow = [&](double x, double y) {
    min_x = std::min(min_x, x);
    max_x = std::max(max_x, x);
    min_y = std::min(min_y, y);
    max_y = std::max(max_y, y);
  };
  for (const auto& o : scenario.obstacles) {
    grow(o.lower[0], o.lower[1]);
    grow(o.upper[0], o.upper[1]);
  }
  for (const auto& step : result.steps) {
    for (const auto& x : step.executed.states) grow(x[0], x[1]);
  }
  const double margin = 0.08 * std::max(max_x - min_x, max_y - min_y) + 1e-6;
  SvgCanvas canvas(min_x - margin, min_y - margin, max_x + margin,
                   max_y + margin);

  canvas.box(scenario.target, "seagreen", 0.15, "seagreen");
  for (const auto& o : scenario.obstacles) canvas.box(o, "red", 0.6, "darkred");
  canvas.rect(scenario.start.lower[0], scenario.start.lower[1],
              scenario.start.upper[0], scenario.start.upper[1], "steelblue",
              0.8, "steelblue");

  for (const auto& step : result.steps) {
    if (step.working) {
      canvas.polygon(octagon_outline(project_xy(*step.working)), "#bbbbbb", 1.0);
    }
    if (step.cert) {
      const double theta = step.step_init.center()[2];
      const QuadraticCertificate cert = *step.cert;
      const auto segs = implicit_curve_segments(
          [&](double x, double y) {
            return evaluate(cert, Eigen::Vector3d(x, y, theta));
          },
          min_x - margin, min_y - margin, max_x + margin, max_y + margin, 200);
      canvas.segments(segs, "black", 1.0);
    }
    if (!step.executed.states.empty()) {
      std::vector<Eigen::Vector2d> pts;
      for (const auto& x : step.executed.states) pts.emplace_back(x[0], x[1]);
      if (step.source == StepSource::Safe) {
        canvas.polyline(pts, "darkorange", 2.5, "6,4");
      } else {
        canvas.polyline(pts, "green", 2.0);
      }
    } else {
      const Eigen::VectorXd c = step.step_init.center();
      canvas.circle(c[0], c[1], 5.0, "red");
    }
  }
  canvas.save(path);
}

int run_plan(const PlanOpts& opts) {
  const Scenario scenario = load_scenario(opts.scenario_path);
  const Mlp net = load_mlp(opts.net_path);
  const SystemModel model = car_model();
  const PlanResult result =
      plan(scenario, model, net, opts.budget, opts.common.seed);

  fs::create_directories(opts.common.out);
  std::ofstream steps_out(fs::path(opts.common.out) / "plan.jsonl");
  std::ofstream meta_out(fs::path(opts.common.out) / "plan_meta.jsonl");
  for (const auto& step : result.steps) {
    steps_out << plan_step_to_json(step).dump() << "\n";
    meta_out << json{{"index", step.index}, {"wall_s", step.wall_time}}.dump()
             << "\n";
  }
  save_json((fs::path(opts.common.out) / "plan_summary.json").string(),
            json{{"steps", result.steps.size()},
                 {"target_reached", result.target_reached},
                 {"exited_working", result.exited_working}});
  render_scene(scenario, result,
               (fs::path(opts.common.out) / "scene.svg").string());

  int fallbacks = 0, stopped = 0;
  for (const auto& step : result.steps) {
    fallbacks += step.outcome == StepOutcome::FallbackCertified;
    stopped += step.outcome == StepOutcome::Stopped;
  }
  std::cout << "plan: " << result.steps.size() << " steps, " << fallbacks
            << " fallback(s), " << stopped << " stop(s), target_reached="
            << (result.target_reached ? "true" : "false") << "\n";
  return kExitOk;
}

// ------------------------------------------------------------------- bench

struct BenchOpts {
  CommonOpts common;
  std::string net_path;
  int count = 100;
  long budget = kOnlineBudget;
};

int run_bench(const BenchOpts& opts) {
  if (opts.count <= 0) {
    std::cerr << "bench: instance count must be positive\n";
    return kExitUsage;
  }
  const SystemModel model = car_model();
  const Mlp net = load_mlp(opts.net_path);
  const WorkingRegionSpec region_spec = desk_region_spec(model);

  Rng rng(opts.common.seed);
  std::string csv = "case,status,boxes_explored,wall_s\n";
  std::vector<double> all_times, valid_times;
  int within_bound = 0;
  for (int k = 0; k < opts.count; ++k) {
    SweepCase item = sample_car_case(rng);
    // Exercise the full frame handling: random world position and raw
    // (unnormalized) heading, with either turn direction.
    const Eigen::Vector3d shift(rng.uniform(0.0, 20.0), rng.uniform(0.0, 20.0),
                                rng.uniform(-6.2, 6.2));
    item.init = HyperBox(item.init.lower + shift, item.init.upper + shift);
    if (rng.uniform(0.0, 1.0) < 0.5) item.control->omega = -item.control->omega;

    auto [working, complement] = build_working_region(
        model, item.control, item.init, region_spec,
        opts.common.seed + 2000003ull * (k + 1), opts.common.threads);

    const double t0 = now_seconds();
    std::string status = "error";
    long boxes = 0;
    try {
      const EncodedInput encoded =
          encode_initial_set(model, item.init, item.control);
      const QuadraticCertificate cert =
          decode_certificate(model, forward(net, encoded.input), encoded);
      VerificationProblem problem{model,
                                  item.control,
                                  cert,
                                  item.init,
                                  UnsafeSpec{std::vector<HyperBox>{}},
                                  working,
                                  kDefaultGamma,
                                  opts.budget};
      const VerificationOutcome outcome = certify(problem);
      status = status_name(outcome.status);
      boxes = outcome.boxes_explored;
    } catch (const std::exception&) {
      status = "error";
    }
    const double wall = now_seconds() - t0;
    all_times.push_back(wall);
    if (status == "valid") valid_times.push_back(wall);
    if (wall <= 2.0) ++within_bound;
    csv += std::to_string(k) + "," + status + "," + std::to_string(boxes) +
           "," + format17(wall) + "\n";
  }

  auto stats = [](const std::vector<double>& ts) {
    json j{{"total_s", 0.0}, {"avg_s", 0.0}, {"min_s", 0.0}, {"max_s", 0.0}};
    if (ts.empty()) return j;
    double total = 0.0, lo = ts.front(), hi = ts.front();
    for (double t : ts) {
      total += t;
      lo = std::min(lo, t);
      hi = std::max(hi, t);
    }
    j["total_s"] = total;
    j["avg_s"] = total / ts.size();
    j["min_s"] = lo;
    j["max_s"] = hi;
    return j;
  };

  fs::create_directories(opts.common.out);
  write_text((fs::path(opts.common.out) / "bench.csv").string(), csv);
  save_json((fs::path(opts.common.out) / "bench_summary.json").string(),
            json{{"count", opts.count},
                 {"within_2s_fraction",
                  static_cast<double>(within_bound) / opts.count},
                 {"valid_count", valid_times.size()},
                 {"all", stats(all_times)},
                 {"valid", stats(valid_times)}});
  std::cout << "bench: " << within_bound << "/" << opts.count
            << " calls within 2 s, " << valid_times.size() << " valid\n";
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Sound reach sets from neural barrier certificates"};
  app.require_subcommand(1);
  app.set_config("--config", "", "JSON config file (flags override)");
  app.config_formatter(std::make_shared<JsonConfig>());

  SimulateOpts sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Integrate a trajectory cloud");
  add_common(sim_cmd, sim.common, true);
  sim_cmd->add_option("--model", sim.model_id, "lin-real | lin-complex | car");
  sim_cmd->add_option("--center", sim.center_csv, "Initial-set center (csv)");
  sim_cmd->add_option("--half-width", sim.half_width_csv,
                      "Initial-set half-widths (csv)");
  sim_cmd->add_option("--horizon", sim.horizon, "Time horizon");
  sim_cmd->add_option("--step", sim.step, "Integrator step");
  sim_cmd->add_option("--samples", sim.samples, "Interior start samples");
  sim_cmd->add_option("--v", sim.v, "Car speed input");
  sim_cmd->add_option("--omega", sim.omega, "Car angular rate input");

  GenDataOpts gen;
  auto* gen_cmd =
      app.add_subcommand("gen-data", "Synthesize a certificate dataset");
  add_common(gen_cmd, gen.common, true);
  gen_cmd->add_option("--model", gen.model_id, "lin-real | lin-complex | car");
  gen_cmd->add_option("--limit", gen.limit, "Truncate the sweep (0 = empty)");
  gen_cmd->add_option("--grid", gen.grid, "Centers per axis (linear sweep)");
  gen_cmd->add_option("--theta-count", gen.theta_count,
                      "Heading grid size (car sweep)");
  gen_cmd->add_option("--augment-sigma", gen.augment_sigma,
                      "Multiplicative noise sigma");
  gen_cmd->add_option("--augment-count", gen.augment_count,
                      "Noise candidates per success");

  TrainOpts tro;
  auto* train_cmd = app.add_subcommand("train", "Train the meta-network");
  add_common(train_cmd, tro.common, true);
  train_cmd->add_option("--dataset", tro.dataset_path, "dataset.jsonl path")
      ->required();
  train_cmd->add_option("--epochs", tro.epochs, "Training epochs");
  train_cmd->add_option("--rate", tro.rate, "Learning rate");
  train_cmd->add_option("--batch", tro.batch, "Mini-batch size");
  train_cmd->add_option("--hidden", tro.hidden, "Hidden layer width");

  ValidateOpts val;
  auto* val_cmd =
      app.add_subcommand("validate", "Success rate over random held-out sets");
  add_common(val_cmd, val.common, true);
  val_cmd->add_option("--model", val.model_id, "lin-real | lin-complex | car");
  val_cmd->add_option("--net", val.net_path, "model.json path")->required();
  val_cmd->add_option("--n-test", val.n_test, "Number of held-out sets");
  val_cmd->add_option("--budget", val.budget, "Verifier box budget");
  val_cmd->add_option("--assert-rate", val.assert_rate,
                      "Exit 3 when the success rate is below this");

  PlanOpts pl;
  auto* plan_cmd = app.add_subcommand("plan", "Run the online planning loop");
  add_common(plan_cmd, pl.common, true);
  plan_cmd->add_option("--scenario", pl.scenario_path, "Scenario JSON path")
      ->required();
  plan_cmd->add_option("--net", pl.net_path, "model.json path")->required();
  plan_cmd->add_option("--budget", pl.budget, "Per-call verifier budget");

  BenchOpts ben;
  auto* bench_cmd =
      app.add_subcommand("bench", "Latency of online certification calls");
  add_common(bench_cmd, ben.common, true);
  bench_cmd->add_option("--net", ben.net_path, "model.json path")->required();
  bench_cmd->add_option("--count", ben.count, "Number of certification calls");
  bench_cmd->add_option("--budget", ben.budget, "Per-call verifier budget");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (sim_cmd->parsed()) return run_simulate(sim);
    if (gen_cmd->parsed()) return run_gen_data(gen);
    if (train_cmd->parsed()) return run_train(tro);
    if (val_cmd->parsed()) return run_validate(val);
    if (plan_cmd->parsed()) return run_plan(pl);
    if (bench_cmd->parsed()) return run_bench(ben);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}

int run_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.push_back("barrier-reach");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace barrier_reach
