#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "amoeba/dynamics.hpp"
#include "amoeba/instance.hpp"
#include "amoeba/solver.hpp"

namespace amoeba {

/// Names accepted by preset(): original, a1, a2, b1, b2, b3, b4, c1, c2, c3, improved.
std::span<const std::string_view> preset_names();

/// Throws ConfigError for an unknown name.
VariantConfig preset(std::string_view name);

/// Constants applied to every map of a batch; nu is recalibrated per map unless pinned.
struct ParamPolicy {
  double lambda = 0.5;
  double mu = 0.5;
  double delta = 0.003;
  double delta_out = 0.001;
  double delta_in = 0.001;
  std::optional<double> nu;

  [[nodiscard]] ParamSet params_for(const TspInstance& inst) const;
};

struct MapPolicy {
  enum class Kind { kFreshPerTrial, kFixed };
  Kind kind = Kind::kFreshPerTrial;
  std::uint64_t seed = 0;  // used by kFixed
  double mean = 100.0;
  double sd = 17.0;
};

enum class SeedStream : std::uint64_t { kTrial = 0, kMap = 1 };

/// Counter-based seed for trial `index`; independent of worker scheduling.
std::uint64_t derive_seed(std::uint64_t global_seed, std::uint64_t index, SeedStream stream) noexcept;

struct BatchSpec {
  std::string variant = "original";
  VariantConfig cfg;
  std::size_t n = 20;
  std::size_t trials = 200;
  std::uint64_t global_seed = 1;
  std::uint64_t max_iters = kDefaultMaxIters;
  ParamPolicy params;
  MapPolicy map;
  unsigned workers = 1;  // 0 picks the hardware concurrency
};

struct TrialSummary {
  std::size_t index = 0;
  bool success = false;
  std::uint64_t iterations = 0;
  std::optional<double> r_calc;
  std::optional<double> ratio;
  std::uint64_t seed = 0;
  std::uint64_t map_seed = 0;

  friend bool operator==(const TrialSummary&, const TrialSummary&) = default;
};

/// Averages and spreads are over successful trials only; they are empty when
/// there are no successes (spreads also need two).
struct AggregateStats {
  std::string variant;
  std::size_t n = 0;
  std::size_t trials = 0;
  std::size_t successes = 0;
  double success_rate = 0.0;
  std::optional<double> avg_iterations;
  std::optional<double> std_iterations;
  std::optional<double> avg_ratio;
  std::optional<double> std_ratio;
  std::vector<TrialSummary> per_trial;

  friend bool operator==(const AggregateStats&, const AggregateStats&) = default;
};

/// Folds trial summaries in index order.
AggregateStats aggregate(std::string variant, std::size_t n, std::vector<TrialSummary> trials);

AggregateStats run_batch(const BatchSpec& spec);

/// One run_batch per entry of `n_list`, in order; spec.n is ignored.
std::vector<AggregateStats> run_sweep(const BatchSpec& spec, std::span<const std::size_t> n_list);

struct ScalingPoint {
  double n = 0.0;
  double iterations = 0.0;
};

/// Least squares of ln(iterations) on ln(n): iterations ~= prefactor * n^exponent.
struct ScalingFit {
  std::vector<ScalingPoint> points;
  double exponent = 0.0;
  double prefactor = 0.0;
  double r_squared = 0.0;
};

/// Throws ConfigError with fewer than three points or non-positive values.
ScalingFit fit_scaling(std::vector<ScalingPoint> points);
/// Uses avg_iterations of each entry; every entry needs a success.
ScalingFit fit_scaling(std::span<const AggregateStats> stats);

/// c in iterations ~= c sqrt(n), least squares through the origin.
double sqrt_n_coefficient(std::span<const ScalingPoint> points);

}  // namespace amoeba
