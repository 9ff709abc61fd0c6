#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "amoeba/harness.hpp"

namespace amoeba::cli {

/// Run configuration file (JSON). Every key is optional; unknown keys are rejected,
/// and "preset" and "elements" are mutually exclusive.
///
///   {
///     "params":   {"lambda", "mu", "nu", "delta", "delta_out", "delta_in"},
///     "preset":   "improved",
///     "elements": {"a": "uniform|zero|normal",
///                  "b": "original|scale|zero-delta-in|denom-n", "b_factor": 0.9,
///                  "c": ["o-const", "l-outer-step", "l-inner-step"],
///                  "normal_sd": 0.003},
///     "n": 20, "n_list": [10, 20, 50],
///     "trials": 200, "max_iters": 3000, "seed": 1, "workers": 0,
///     "map_policy": "fresh|fixed", "map_seed": 7, "map_mean": 100, "map_sd": 17,
///     "outputs":  {"results": "r.csv", "fit": "fit.json", "plot_prefix": "fig2"}
///   }
struct RunConfig {
  ParamPolicy params;
  std::optional<std::string> preset;
  std::optional<VariantConfig> elements;
  std::optional<std::size_t> n;
  std::vector<std::size_t> n_list;
  std::optional<std::size_t> trials;
  std::optional<std::uint64_t> max_iters;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> workers;
  std::optional<MapPolicy> map;
  std::optional<std::string> results_path;
  std::optional<std::string> fit_path;
  std::optional<std::string> plot_prefix;
};

/// Throws ConfigError.
RunConfig parse_run_config(const std::string& text);
RunConfig load_run_config(const std::filesystem::path& path);

/// Element switches by name, shared by the config file and the command-line flags.
Fluctuation parse_element_a(const std::string& name);
ElongationRule parse_element_b(const std::string& name, double factor);
SigmoidSwitches parse_element_c(const std::vector<std::string>& flags);

/// Inverse of the above, for reports.
std::string describe(const VariantConfig& cfg);

}  // namespace amoeba::cli
