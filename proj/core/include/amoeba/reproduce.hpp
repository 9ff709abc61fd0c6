#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "amoeba/harness.hpp"

namespace amoeba {

/// One published result row. Iteration and ratio averages are absent when no
/// trial succeeded.
struct PublishedRow {
  int table;
  std::string_view preset;
  std::size_t n;
  double success_rate;
  std::optional<double> avg_iterations;
  std::optional<double> avg_ratio;
};

/// Reference rows for tables 2 to 5 of the ablation study (1000 trials each).
std::span<const PublishedRow> published_rows();
/// Rows of one table in published order. Throws ConfigError for tables other than 2..5.
std::vector<PublishedRow> published_table(int table);

struct Comparison {
  enum class Kind { kAbsolute, kRelative, kExact, kRange };
  std::string label;   // e.g. "b4 n=20"
  std::string metric;  // success_rate, avg_iterations, avg_ratio, exponent
  double published = 0.0;
  std::optional<double> measured;
  Kind kind = Kind::kAbsolute;
  double tolerance = 0.0;  // kRange uses [low, high]
  double low = 0.0;
  double high = 0.0;
  bool pass = false;
};

/// Evaluates `measured` against `published` and fills `pass`.
Comparison compare(std::string label, std::string metric, double published, std::optional<double> measured,
                   Comparison::Kind kind, double tolerance);

struct ReproduceOptions {
  std::size_t trials = 200;
  std::uint64_t global_seed = 1;
  std::uint64_t max_iters = kDefaultMaxIters;
  unsigned workers = 0;
  std::vector<std::size_t> n_list;  // table 5 only; empty means every published n
};

struct ReproduceReport {
  int table = 0;
  std::vector<AggregateStats> stats;
  std::vector<Comparison> checks;
  std::optional<ScalingFit> fit;

  [[nodiscard]] bool all_pass() const;
};

/// Runs the preset list of a table and compares to the published values with
/// tolerances: success rate +-0.05 (exact when published as 0), iterations +-15%,
/// ratio +-0.03, and for table 5 a log-log exponent in [0.40, 0.60].
ReproduceReport reproduce_table(int table, const ReproduceOptions& opts);

}  // namespace amoeba
