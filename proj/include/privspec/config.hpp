#ifndef PRIVSPEC_CONFIG_HPP
#define PRIVSPEC_CONFIG_HPP

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>

#include "privspec/experiment.hpp"

namespace privspec {

/// Experiment configuration document plus front-end settings.
///
/// Every key is optional and defaults to the ExperimentConfig default;
/// unknown keys are rejected. Errors are ConfigError carrying the JSON
/// pointer of the offending node.
///
///   {
///     "model": {"a1": 0.2, "a2": 0.9, "b0": 1, "b1": 0, "b2": 1, "sigma": 0.5},
///     "lengths": [10000, 20000],
///     "alphas": ["inf", 5, 2.5],
///     "truncation": {"mode": "fixed", "tau": 4} | {"mode": "theoretical", "nu": 2},
///     "kappa": 1,
///     "family": {"kind": "histogram", "d_min": 1, "d_max": 50},
///     "replications": 100,
///     "master_seed": 20210101,
///     "burn_in": 2000,
///     "risk_grid_size": 8192,
///     "curve_grid_size": 512,
///     "risk_normalization": "averaged",
///     "clamp_negative": false,
///     "output_dir": "results",
///     "verbosity": 1
///   }
struct CliConfig {
  ExperimentConfig experiment;
  std::optional<std::string> output_dir;
  int verbosity = 1;
};

CliConfig parse_config(const nlohmann::json& document);
CliConfig load_config(const std::filesystem::path& path);
nlohmann::json config_to_json(const CliConfig& config);

}  // namespace privspec

#endif  // PRIVSPEC_CONFIG_HPP
