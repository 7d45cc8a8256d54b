#include "barrier_reach/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace barrier_reach {

namespace {

using nlohmann::json;

std::vector<double> to_std(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

Eigen::VectorXd to_eigen(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), v.size());
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

}  // namespace

void to_json(json& j, const HyperBox& box) {
  j = json{{"lower", to_std(box.lower)}, {"upper", to_std(box.upper)}};
}

void from_json(const json& j, HyperBox& box) {
  box = HyperBox(to_eigen(j.at("lower").get<std::vector<double>>()),
                 to_eigen(j.at("upper").get<std::vector<double>>()));
}

void to_json(json& j, const OctagonRegion& region) {
  json support = json::object();
  for (int k = 0; k < region.offsets().size(); ++k) {
    support[OctagonRegion::direction_at(region.dim(), k).name()] =
        region.offset(k);
  }
  j = json{{"dim", region.dim()}, {"support", support}};
}

void from_json(const json& j, OctagonRegion& region) {
  const int dim = j.at("dim").get<int>();
  const int m = OctagonRegion::direction_count(dim);
  Eigen::VectorXd offsets(m);
  const json& support = j.at("support");
  for (int k = 0; k < m; ++k) {
    offsets[k] =
        support.at(OctagonRegion::direction_at(dim, k).name()).get<double>();
  }
  region = OctagonRegion(dim, std::move(offsets));
}

void to_json(json& j, const QuadraticCertificate& cert) {
  j = json{{"dim", cert.dim()}, {"coeffs", to_std(cert.coeffs())}};
}

void from_json(const json& j, QuadraticCertificate& cert) {
  cert = QuadraticCertificate(
      j.at("dim").get<int>(),
      to_eigen(j.at("coeffs").get<std::vector<double>>()));
}

void to_json(json& j, const Mlp& net) {
  json weights = json::array();
  json biases = json::array();
  for (const auto& w : net.weights) {
    std::vector<double> flat;
    flat.reserve(w.size());
    for (int r = 0; r < w.rows(); ++r) {
      for (int c = 0; c < w.cols(); ++c) flat.push_back(w(r, c));
    }
    weights.push_back(flat);
  }
  for (const auto& b : net.biases) biases.push_back(to_std(b));
  j = json{{"layer_sizes", net.layer_sizes},
           {"weights", weights},
           {"biases", biases},
           {"encoding_id", net.encoding_id}};
}

void from_json(const json& j, Mlp& net) {
  net.layer_sizes = j.at("layer_sizes").get<std::vector<int>>();
  net.encoding_id = j.value("encoding_id", "");
  net.weights.clear();
  net.biases.clear();
  const json& weights = j.at("weights");
  const json& biases = j.at("biases");
  for (std::size_t i = 0; i + 1 < net.layer_sizes.size(); ++i) {
    const int rows = net.layer_sizes[i + 1];
    const int cols = net.layer_sizes[i];
    const auto flat = weights.at(i).get<std::vector<double>>();
    if (static_cast<int>(flat.size()) != rows * cols) {
      throw std::invalid_argument("Mlp: weight shape mismatch");
    }
    Eigen::MatrixXd w(rows, cols);
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c) w(r, c) = flat[r * cols + c];
    }
    net.weights.push_back(std::move(w));
    net.biases.push_back(to_eigen(biases.at(i).get<std::vector<double>>()));
  }
}

void to_json(json& j, const Scenario& scenario) {
  j = json{{"start", scenario.start},
           {"target", scenario.target},
           {"reference", {scenario.reference[0], scenario.reference[1]}},
           {"obstacles", scenario.obstacles},
           {"T", scenario.total_horizon},
           {"T_r", scenario.step_horizon},
           {"sensing_bloat",
            {{"position", scenario.sensing_bloat.position},
             {"angle", scenario.sensing_bloat.angle}}},
           {"controller",
            {{"alpha1", scenario.controller.alpha1},
             {"alpha2", scenario.controller.alpha2},
             {"alpha3", scenario.controller.alpha3}}},
           {"deadline_per_step", scenario.deadline_per_step},
           {"working_eps", scenario.working_eps},
           {"interior_samples", scenario.interior_samples},
           {"integrator_step", scenario.integrator_step},
           {"domain", scenario.domain}};
}

void from_json(const json& j, Scenario& scenario) {
  scenario.start = j.at("start").get<HyperBox>();
  scenario.target = j.at("target").get<HyperBox>();
  const auto ref = j.at("reference").get<std::vector<double>>();
  if (ref.size() != 2) throw std::invalid_argument("Scenario: bad reference");
  scenario.reference = Eigen::Vector2d(ref[0], ref[1]);
  scenario.obstacles = j.at("obstacles").get<std::vector<HyperBox>>();
  scenario.total_horizon = j.at("T").get<double>();
  scenario.step_horizon = j.at("T_r").get<double>();
  if (j.contains("sensing_bloat")) {
    scenario.sensing_bloat.position =
        j.at("sensing_bloat").at("position").get<double>();
    scenario.sensing_bloat.angle =
        j.at("sensing_bloat").at("angle").get<double>();
  }
  const json& c = j.at("controller");
  scenario.controller.alpha1 = c.at("alpha1").get<double>();
  scenario.controller.alpha2 = c.at("alpha2").get<double>();
  scenario.controller.alpha3 = c.at("alpha3").get<double>();
  scenario.controller.target = scenario.reference;
  scenario.deadline_per_step = j.value("deadline_per_step", 2.0);
  scenario.working_eps = j.value("working_eps", 0.1);
  scenario.interior_samples = j.value("interior_samples", 20);
  scenario.integrator_step = j.value("integrator_step", 0.01);
  if (j.contains("domain")) {
    scenario.domain = j.at("domain").get<HyperBox>();
  } else {
    scenario.domain = default_domain(car_model());
  }
}

std::string status_name(VerificationStatus status) {
  switch (status) {
    case VerificationStatus::Valid:
      return "valid";
    case VerificationStatus::Counterexample:
      return "counterexample";
    case VerificationStatus::Unknown:
      return "unknown";
  }
  return "unknown";
}

std::string condition_name(ConditionKind condition) {
  switch (condition) {
    case ConditionKind::InitCondition:
      return "init";
    case ConditionKind::UnsafeCondition:
      return "unsafe";
    case ConditionKind::LieCondition:
      return "lie";
  }
  return "";
}

void to_json(json& j, const VerificationOutcome& outcome) {
  j = json{{"status", status_name(outcome.status)},
           {"boxes_explored", outcome.boxes_explored}};
  j["witness"] =
      outcome.witness ? json(to_std(*outcome.witness)) : json(nullptr);
  j["violated"] =
      outcome.violated ? json(condition_name(*outcome.violated)) : json(nullptr);
}

void to_json(json& j, const ReachSet& rs) {
  j = json{{"certificate", rs.cert}, {"working", rs.working}};
}

void from_json(const json& j, ReachSet& rs) {
  rs.cert = j.at("certificate").get<QuadraticCertificate>();
  rs.working = j.at("working").get<OctagonRegion>();
}

nlohmann::json plan_step_to_json(const PlanStep& step) {
  json j;
  j["index"] = step.index;
  j["control"] = {{"v", step.control_used.v}, {"omega", step.control_used.omega}};
  j["source"] = step.source == StepSource::Base ? "base" : "safe";
  switch (step.outcome) {
    case StepOutcome::Certified:
      j["outcome"] = "certified";
      break;
    case StepOutcome::FallbackCertified:
      j["outcome"] = "fallback_certified";
      break;
    case StepOutcome::Stopped:
      j["outcome"] = "stopped";
      break;
  }
  j["certificate"] = step.cert ? json(*step.cert) : json(nullptr);
  j["working"] = step.working ? json(*step.working) : json(nullptr);
  j["step_init"] = step.step_init;
  json times = json::array();
  json states = json::array();
  for (std::size_t k = 0; k < step.executed.times.size(); ++k) {
    times.push_back(step.executed.times[k]);
    states.push_back(to_std(step.executed.states[k]));
  }
  j["executed"] = {{"times", times}, {"states", states}};
  j["boxes_explored"] = step.boxes_explored;
  return j;
}

nlohmann::json round_record_to_json(const RoundRecord& record) {
  return json{{"round", record.round},
              {"loss", record.loss},
              {"counterexamples_added", record.counterexamples_added},
              {"verifier_status", status_name(record.verifier_status)}};
}

void save_dataset(const std::string& path, const Dataset& dataset) {
  auto out = open_out(path);
  out << json{{"encoding_id", dataset.encoding_id},
              {"model_id", dataset.model_id},
              {"pairs", dataset.pairs.size()}}
             .dump()
      << "\n";
  for (const auto& pair : dataset.pairs) {
    out << json{{"input", to_std(pair.input)}, {"target", to_std(pair.target)}}
               .dump()
        << "\n";
  }
}

Dataset load_dataset(const std::string& path) {
  auto in = open_in(path);
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("dataset file empty: " + path);
  }
  const json meta = json::parse(line);
  Dataset dataset;
  dataset.encoding_id = meta.value("encoding_id", "");
  dataset.model_id = meta.value("model_id", "");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const json j = json::parse(line);
    dataset.pairs.push_back(
        {to_eigen(j.at("input").get<std::vector<double>>()),
         to_eigen(j.at("target").get<std::vector<double>>())});
  }
  return dataset;
}

void save_json(const std::string& path, const json& j) {
  auto out = open_out(path);
  out << j.dump(2) << "\n";
}

json load_json(const std::string& path) {
  auto in = open_in(path);
  json j;
  in >> j;
  return j;
}

void save_mlp(const std::string& path, const Mlp& net) {
  save_json(path, json(net));
}

Mlp load_mlp(const std::string& path) { return load_json(path).get<Mlp>(); }

Scenario load_scenario(const std::string& path) {
  return load_json(path).get<Scenario>();
}

namespace {

bool type_matches(const json& value, const std::string& type) {
  if (type == "object") return value.is_object();
  if (type == "array") return value.is_array();
  if (type == "string") return value.is_string();
  if (type == "number") return value.is_number();
  if (type == "integer") return value.is_number_integer();
  if (type == "boolean") return value.is_boolean();
  if (type == "null") return value.is_null();
  return false;
}

bool fail(std::string* error, const std::string& message) {
  if (error) *error = message;
  return false;
}

}  // namespace

bool matches_schema(const json& value, const json& schema, std::string* error) {
  if (schema.contains("type")) {
    const json& t = schema.at("type");
    bool ok = false;
    if (t.is_array()) {
      for (const auto& alt : t) ok = ok || type_matches(value, alt);
    } else {
      ok = type_matches(value, t.get<std::string>());
    }
    if (!ok) return fail(error, "type mismatch: " + value.dump().substr(0, 80));
  }
  if (schema.contains("enum")) {
    bool ok = false;
    for (const auto& candidate : schema.at("enum")) ok = ok || candidate == value;
    if (!ok) return fail(error, "enum mismatch: " + value.dump().substr(0, 80));
  }
  if (value.is_number()) {
    if (schema.contains("minimum") &&
        value.get<double>() < schema.at("minimum").get<double>()) {
      return fail(error, "below minimum");
    }
    if (schema.contains("maximum") &&
        value.get<double>() > schema.at("maximum").get<double>()) {
      return fail(error, "above maximum");
    }
  }
  if (value.is_object()) {
    if (schema.contains("required")) {
      for (const auto& key : schema.at("required")) {
        if (!value.contains(key.get<std::string>())) {
          return fail(error, "missing required key " + key.get<std::string>());
        }
      }
    }
    if (schema.contains("properties")) {
      for (const auto& [key, sub] : schema.at("properties").items()) {
        if (value.contains(key) && !matches_schema(value.at(key), sub, error)) {
          return false;
        }
      }
      if (schema.value("additionalProperties", true) == false) {
        for (const auto& [key, unused] : value.items()) {
          if (!schema.at("properties").contains(key)) {
            return fail(error, "unexpected key " + key);
          }
        }
      }
    }
  }
  if (value.is_array()) {
    if (schema.contains("minItems") &&
        value.size() < schema.at("minItems").get<std::size_t>()) {
      return fail(error, "too few items");
    }
    if (schema.contains("maxItems") &&
        value.size() > schema.at("maxItems").get<std::size_t>()) {
      return fail(error, "too many items");
    }
    if (schema.contains("items")) {
      for (const auto& item : value) {
        if (!matches_schema(item, schema.at("items"), error)) return false;
      }
    }
  }
  return true;
}

}  // namespace barrier_reach
