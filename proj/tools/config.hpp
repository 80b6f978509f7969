#pragma once

// Run configuration for the command line tool. One JSON file describes the
// topology (or several), the bank balance-sheet model, and the experiment
// shape; parsing is strict, unknown or ill-typed keys are ConfigErrors that
// name the offending key.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rehypo/cascade.hpp"
#include "rehypo/experiment.hpp"
#include "rehypo/network.hpp"

namespace rehypo::cli {

enum class Command { solve, sweep, cascade, gen };

// Scalar broadcast over banks, or one value per bank.
struct PerBank {
  std::optional<double> scalar;
  std::optional<std::vector<double>> values;

  bool present() const { return scalar.has_value() || values.has_value(); }
  Vector broadcast(int n, const std::string& key) const;
};

struct TopologyConfig {
  std::string label;  // kind string, used in CSV rows
  TopologySpec spec;
  bool is_edge_list = false;
  std::string edge_list_path;
  std::optional<double> param;  // explicit k / p / p_core for solve and gen
};

struct ModelConfig {
  enum class Kind { fixed_theta, var };
  Kind kind = Kind::fixed_theta;
  double haircut = 0.0;
  PerBank a0;
  PerBank theta;       // fixed_theta
  PerBank c0;          // var, stated directly
  PerBank mu, sigma, confidence;  // var, buffers derived from shock quantiles
  bool from_normal = false;
};

struct ShockConfig {
  enum class Mode { random, targeted, both };
  double fraction = 0.0;
  double magnitude = 0.0;
  Mode mode = Mode::both;
};

struct RunConfig {
  std::vector<TopologyConfig> topologies;
  ModelConfig model;
  std::optional<ShockConfig> shock;
  std::vector<double> densities;
  int samples = 1;
  std::uint64_t seed = 0;
  std::string out;  // empty means stdout
};

// Reads and validates the file for the given command. Overrides, when set,
// replace the config values after parsing.
RunConfig load_config(const std::string& path, Command cmd,
                      std::optional<std::uint64_t> seed_override,
                      std::optional<int> samples_override,
                      std::optional<std::string> out_override);

// Builds the bank parameter vectors for a network of n nodes.
BankParams fixed_params(const ModelConfig& model, int n);
VaRConfig var_params(const ModelConfig& model, int n);

}  // namespace rehypo::cli
