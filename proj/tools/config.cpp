#include "config.hpp"

#include <fstream>
#include <set>

#include "rehypo/errors.hpp"

namespace rehypo::cli {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                    const std::string& where) {
  for (const auto& [key, value] : obj.items())
    if (!allowed.contains(key))
      throw ConfigError("unknown key '" + key + "' in " + where);
}

const json& require(const json& obj, const std::string& key, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw ConfigError("missing key '" + key + "' in " + where);
  return *it;
}

double as_number(const json& v, const std::string& key) {
  if (!v.is_number()) throw ConfigError("key '" + key + "' must be a number");
  return v.get<double>();
}

int as_positive_int(const json& v, const std::string& key) {
  if (!v.is_number_integer() || v.get<long long>() < 1)
    throw ConfigError("key '" + key + "' must be a positive integer");
  return static_cast<int>(v.get<long long>());
}

std::uint64_t as_seed(const json& v, const std::string& key) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<long long>() >= 0)
    return static_cast<std::uint64_t>(v.get<long long>());
  throw ConfigError("key '" + key + "' must be a nonnegative integer");
}

std::string as_string(const json& v, const std::string& key) {
  if (!v.is_string()) throw ConfigError("key '" + key + "' must be a string");
  return v.get<std::string>();
}

PerBank parse_per_bank(const json& obj, const std::string& key, const std::string& where) {
  PerBank out;
  const auto it = obj.find(key);
  if (it == obj.end()) return out;
  if (it->is_number()) {
    out.scalar = it->get<double>();
  } else if (it->is_array()) {
    std::vector<double> values;
    values.reserve(it->size());
    for (const json& v : *it) {
      if (!v.is_number())
        throw ConfigError("key '" + key + "' in " + where + " must hold numbers");
      values.push_back(v.get<double>());
    }
    out.values = std::move(values);
  } else {
    throw ConfigError("key '" + key + "' in " + where + " must be a number or an array");
  }
  return out;
}

TopologyConfig parse_topology(const json& obj, Command cmd, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + " must be an object");
  const std::string kind = as_string(require(obj, "kind", where), where + ".kind");
  const bool wants_param = cmd == Command::solve || cmd == Command::gen;

  TopologyConfig topo;
  topo.label = kind;
  auto explicit_param = [&](const char* key) -> std::optional<double> {
    const auto it = obj.find(key);
    if (it == obj.end()) {
      if (wants_param)
        throw ConfigError("missing key '" + std::string(key) + "' in " + where +
                          " (this command takes explicit generator parameters)");
      return std::nullopt;
    }
    if (!wants_param)
      throw ConfigError("key '" + std::string(key) + "' in " + where +
                        " is not allowed here, the density grid sets it");
    return as_number(*it, where + "." + key);
  };

  if (kind == "k_regular") {
    reject_unknown(obj, {"kind", "n", "k"}, where);
    topo.spec.kind = TopologyKind::closed_k_regular;
    topo.spec.n = as_positive_int(require(obj, "n", where), where + ".n");
    topo.param = explicit_param("k");
  } else if (kind == "random") {
    reject_unknown(obj, {"kind", "n", "p"}, where);
    topo.spec.kind = TopologyKind::random_directed;
    topo.spec.n = as_positive_int(require(obj, "n", where), where + ".n");
    topo.param = explicit_param("p");
  } else if (kind == "core_periphery") {
    reject_unknown(obj, {"kind", "n", "n_core", "k_per", "p_core"}, where);
    topo.spec.kind = TopologyKind::core_periphery;
    topo.spec.n = as_positive_int(require(obj, "n", where), where + ".n");
    topo.spec.n_core = as_positive_int(require(obj, "n_core", where), where + ".n_core");
    topo.spec.k_per = obj.contains("k_per")
                          ? as_positive_int(obj.at("k_per"), where + ".k_per")
                          : 1;
    topo.param = explicit_param("p_core");
  } else if (kind == "edge_list") {
    if (cmd != Command::solve)
      throw ConfigError(where + ": kind 'edge_list' is only available to the solve command");
    reject_unknown(obj, {"kind", "path"}, where);
    topo.is_edge_list = true;
    topo.edge_list_path = as_string(require(obj, "path", where), where + ".path");
  } else {
    throw ConfigError(where + ".kind must be one of k_regular, random, core_periphery, edge_list");
  }
  return topo;
}

ModelConfig parse_model(const json& obj, Command cmd) {
  if (!obj.is_object()) throw ConfigError("'model' must be an object");
  const std::string kind = as_string(require(obj, "kind", "model"), "model.kind");

  ModelConfig model;
  model.haircut = as_number(require(obj, "h", "model"), "model.h");
  model.a0 = parse_per_bank(obj, "a0", "model");
  if (!model.a0.present()) throw ConfigError("missing key 'a0' in model");

  if (kind == "fixed_theta") {
    if (cmd == Command::cascade)
      throw ConfigError("the cascade command needs model.kind 'var'");
    reject_unknown(obj, {"kind", "h", "a0", "theta"}, "model");
    model.kind = ModelConfig::Kind::fixed_theta;
    model.theta = parse_per_bank(obj, "theta", "model");
    if (!model.theta.present()) throw ConfigError("missing key 'theta' in model");
  } else if (kind == "var") {
    if (cmd == Command::sweep)
      throw ConfigError("the sweep command needs model.kind 'fixed_theta'");
    reject_unknown(obj, {"kind", "h", "a0", "c0", "mu", "sigma", "confidence"}, "model");
    model.kind = ModelConfig::Kind::var;
    model.c0 = parse_per_bank(obj, "c0", "model");
    model.mu = parse_per_bank(obj, "mu", "model");
    model.sigma = parse_per_bank(obj, "sigma", "model");
    model.confidence = parse_per_bank(obj, "confidence", "model");
    const bool normal =
        model.mu.present() || model.sigma.present() || model.confidence.present();
    if (model.c0.present() == normal)
      throw ConfigError("model: give either 'c0' or all of 'mu', 'sigma', 'confidence'");
    if (normal &&
        !(model.mu.present() && model.sigma.present() && model.confidence.present()))
      throw ConfigError("model: 'mu', 'sigma', 'confidence' must be given together");
    model.from_normal = normal;
  } else {
    throw ConfigError("model.kind must be 'fixed_theta' or 'var'");
  }
  return model;
}

ShockConfig parse_shock(const json& obj) {
  if (!obj.is_object()) throw ConfigError("'shock' must be an object");
  reject_unknown(obj, {"fraction", "magnitude", "mode"}, "shock");
  ShockConfig shock;
  shock.fraction = as_number(require(obj, "fraction", "shock"), "shock.fraction");
  shock.magnitude = as_number(require(obj, "magnitude", "shock"), "shock.magnitude");
  if (!(shock.fraction >= 0.0 && shock.fraction <= 1.0))
    throw ConfigError("shock.fraction must lie in [0, 1]");
  if (!(shock.magnitude >= 0.0)) throw ConfigError("shock.magnitude must be nonnegative");
  if (const auto it = obj.find("mode"); it != obj.end()) {
    const std::string mode = as_string(*it, "shock.mode");
    if (mode == "random")
      shock.mode = ShockConfig::Mode::random;
    else if (mode == "targeted")
      shock.mode = ShockConfig::Mode::targeted;
    else if (mode == "both")
      shock.mode = ShockConfig::Mode::both;
    else
      throw ConfigError("shock.mode must be 'random', 'targeted' or 'both'");
  }
  return shock;
}

}  // namespace

Vector PerBank::broadcast(int n, const std::string& key) const {
  if (scalar.has_value()) return Vector::Constant(n, *scalar);
  if (values.has_value()) {
    if (static_cast<int>(values->size()) != n)
      throw ConfigError("key '" + key + "' lists " + std::to_string(values->size()) +
                        " banks but the network has " + std::to_string(n));
    return Eigen::Map<const Vector>(values->data(), n);
  }
  throw ConfigError("missing key '" + key + "'");
}

RunConfig load_config(const std::string& path, Command cmd,
                      std::optional<std::uint64_t> seed_override,
                      std::optional<int> samples_override,
                      std::optional<std::string> out_override) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  json root;
  try {
    root = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
  }
  if (!root.is_object()) throw ConfigError("config root must be an object");

  const bool sweep_like = cmd == Command::sweep || cmd == Command::cascade;
  std::set<std::string> allowed = {"topology", "seed", "out"};
  if (cmd != Command::gen) allowed.insert("model");
  if (sweep_like) {
    allowed.insert("topologies");
    allowed.insert("densities");
    allowed.insert("samples");
  }
  if (cmd == Command::cascade) allowed.insert("shock");
  reject_unknown(root, allowed, "config");

  RunConfig cfg;
  if (root.contains("topology") && root.contains("topologies"))
    throw ConfigError("give either 'topology' or 'topologies', not both");
  if (root.contains("topologies")) {
    const json& arr = root.at("topologies");
    if (!arr.is_array() || arr.empty())
      throw ConfigError("'topologies' must be a non-empty array");
    for (std::size_t i = 0; i < arr.size(); ++i)
      cfg.topologies.push_back(
          parse_topology(arr[i], cmd, "topologies[" + std::to_string(i) + "]"));
  } else {
    cfg.topologies.push_back(parse_topology(require(root, "topology", "config"), cmd, "topology"));
  }

  if (cmd != Command::gen) cfg.model = parse_model(require(root, "model", "config"), cmd);

  if (cmd == Command::cascade) cfg.shock = parse_shock(require(root, "shock", "config"));

  if (sweep_like) {
    const json& densities = require(root, "densities", "config");
    if (!densities.is_array() || densities.empty())
      throw ConfigError("'densities' must be a non-empty array");
    for (const json& d : densities) {
      const double value = as_number(d, "densities");
      if (!(value >= 0.0 && value <= 1.0))
        throw ConfigError("'densities' entries must lie in [0, 1]");
      cfg.densities.push_back(value);
    }
    cfg.samples = as_positive_int(require(root, "samples", "config"), "samples");
  }

  if (const auto it = root.find("seed"); it != root.end()) cfg.seed = as_seed(*it, "seed");
  if (const auto it = root.find("out"); it != root.end()) cfg.out = as_string(*it, "out");

  if (seed_override) cfg.seed = *seed_override;
  if (samples_override) {
    if (!sweep_like) throw ConfigError("--samples only applies to sweep and cascade");
    if (*samples_override < 1) throw ConfigError("--samples must be positive");
    cfg.samples = *samples_override;
  }
  if (out_override) cfg.out = *out_override;
  return cfg;
}

BankParams fixed_params(const ModelConfig& model, int n) {
  return BankParams{model.a0.broadcast(n, "model.a0"), model.theta.broadcast(n, "model.theta"),
                    model.haircut};
}

VaRConfig var_params(const ModelConfig& model, int n) {
  if (model.from_normal)
    return VaRConfig::from_normal(model.mu.broadcast(n, "model.mu"),
                                  model.sigma.broadcast(n, "model.sigma"),
                                  model.confidence.broadcast(n, "model.confidence"),
                                  model.haircut);
  return VaRConfig::from_offsets(model.c0.broadcast(n, "model.c0"), model.haircut);
}

}  // namespace rehypo::cli
