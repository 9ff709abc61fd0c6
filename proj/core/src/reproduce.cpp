#include "amoeba/reproduce.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "amoeba/error.hpp"

namespace amoeba {

namespace {

// Table 2: element A, table 3: element B, table 4: element C; each repeats the
// original model as its baseline row. Table 5 is the improved model over n.
constexpr std::array<PublishedRow, 31> kRows = {{
    {2, "a1", 20, 0.000, std::nullopt, std::nullopt},
    {2, "a2", 20, 0.986, 1326.8, 0.941},
    {2, "original", 20, 0.992, 1870.6, 0.951},
    {3, "b1", 20, 0.990, 1937.4, 0.957},
    {3, "b2", 20, 0.992, 1817.4, 0.949},
    {3, "b3", 20, 0.996, 1989.7, 0.958},
    {3, "b4", 20, 0.994, 1049.3, 0.912},
    {3, "original", 20, 0.992, 1870.6, 0.951},
    {4, "c1", 20, 1.000, 974.5, 0.952},
    {4, "c2", 20, 0.991, 1874.8, 0.953},
    {4, "c3", 20, 0.460, 2578.7, 1.000},
    {4, "original", 20, 0.992, 1870.6, 0.951},
    {5, "improved", 10, 1.00, 199.5, 0.957},
    {5, "improved", 11, 1.00, 201.3, 0.953},
    {5, "improved", 12, 1.00, 211.1, 0.900},
    {5, "improved", 13, 1.00, 219.1, 0.926},
    {5, "improved", 14, 1.00, 229.0, 0.954},
    {5, "improved", 15, 1.00, 235.8, 0.916},
    {5, "improved", 16, 1.00, 247.0, 0.939},
    {5, "improved", 17, 1.00, 253.2, 0.899},
    {5, "improved", 18, 1.00, 260.4, 0.910},
    {5, "improved", 19, 1.00, 269.3, 0.891},
    {5, "improved", 20, 1.00, 276.3, 0.934},
    {5, "improved", 30, 1.00, 341.5, 0.887},
    {5, "improved", 40, 1.00, 393.3, 0.880},
    {5, "improved", 50, 1.00, 437.7, 0.875},
    {5, "improved", 60, 1.00, 479.5, 0.881},
    {5, "improved", 70, 1.00, 515.9, 0.871},
    {5, "improved", 80, 1.00, 550.6, 0.867},
    {5, "improved", 90, 1.00, 581.4, 0.876},
    {5, "improved", 100, 1.00, 622.2, 0.859},
}};

constexpr double kSuccessTolerance = 0.05;
constexpr double kIterationsTolerance = 0.15;
constexpr double kRatioTolerance = 0.03;

void add_row_checks(const PublishedRow& row, const AggregateStats& s, std::vector<Comparison>& checks) {
  const std::string label = std::string(row.preset) + " n=" + std::to_string(row.n);
  if (row.success_rate == 0.0) {
    checks.push_back(compare(label, "success_rate", 0.0, s.success_rate, Comparison::Kind::kExact, 0.0));
  } else {
    checks.push_back(compare(label, "success_rate", row.success_rate, s.success_rate, Comparison::Kind::kAbsolute,
                             kSuccessTolerance));
  }
  if (row.avg_iterations) {
    checks.push_back(compare(label, "avg_iterations", *row.avg_iterations, s.avg_iterations,
                             Comparison::Kind::kRelative, kIterationsTolerance));
  }
  if (row.avg_ratio) {
    checks.push_back(
        compare(label, "avg_ratio", *row.avg_ratio, s.avg_ratio, Comparison::Kind::kAbsolute, kRatioTolerance));
  }
}

}  // namespace

std::span<const PublishedRow> published_rows() { return kRows; }

std::vector<PublishedRow> published_table(int table) {
  if (table < 2 || table > 5) throw ConfigError("published tables are 2, 3, 4 and 5");
  std::vector<PublishedRow> out;
  std::copy_if(kRows.begin(), kRows.end(), std::back_inserter(out), [&](const auto& r) { return r.table == table; });
  return out;
}

Comparison compare(std::string label, std::string metric, double published, std::optional<double> measured,
                   Comparison::Kind kind, double tolerance) {
  Comparison c;
  c.label = std::move(label);
  c.metric = std::move(metric);
  c.published = published;
  c.measured = measured;
  c.kind = kind;
  c.tolerance = tolerance;
  switch (kind) {
    case Comparison::Kind::kAbsolute:
      c.low = published - tolerance;
      c.high = published + tolerance;
      break;
    case Comparison::Kind::kRelative:
      c.low = published * (1.0 - tolerance);
      c.high = published * (1.0 + tolerance);
      break;
    case Comparison::Kind::kExact:
      c.low = c.high = published;
      break;
    case Comparison::Kind::kRange:
      break;
  }
  c.pass = measured && *measured >= c.low && *measured <= c.high;
  return c;
}

bool ReproduceReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Comparison& c) { return c.pass; });
}

ReproduceReport reproduce_table(int table, const ReproduceOptions& opts) {
  const std::vector<PublishedRow> rows = published_table(table);
  ReproduceReport report;
  report.table = table;

  BatchSpec base;
  base.trials = opts.trials;
  base.global_seed = opts.global_seed;
  base.max_iters = opts.max_iters;
  base.workers = opts.workers;

  if (table != 5) {
    for (const auto& row : rows) {
      BatchSpec spec = base;
      spec.variant = std::string(row.preset);
      spec.cfg = preset(row.preset);
      spec.n = row.n;
      report.stats.push_back(run_batch(spec));
      add_row_checks(row, report.stats.back(), report.checks);
    }
    return report;
  }

  std::vector<std::size_t> n_list = opts.n_list;
  if (n_list.empty()) {
    for (const auto& row : rows) n_list.push_back(row.n);
  }
  BatchSpec spec = base;
  spec.variant = "improved";
  spec.cfg = preset("improved");
  report.stats = run_sweep(spec, n_list);
  for (const auto& s : report.stats) {
    const auto it = std::find_if(rows.begin(), rows.end(), [&](const auto& r) { return r.n == s.n; });
    if (it != rows.end()) add_row_checks(*it, s, report.checks);
  }
  const bool fittable =
      report.stats.size() >= 3 && std::all_of(report.stats.begin(), report.stats.end(),
                                              [](const auto& s) { return s.avg_iterations.has_value(); });
  Comparison exponent;
  exponent.label = "improved sweep";
  exponent.metric = "exponent";
  exponent.published = 0.5;
  exponent.kind = Comparison::Kind::kRange;
  exponent.low = 0.40;
  exponent.high = 0.60;
  if (fittable) {
    report.fit = fit_scaling(report.stats);
    exponent.measured = report.fit->exponent;
    exponent.pass = report.fit->exponent >= exponent.low && report.fit->exponent <= exponent.high;
  }
  report.checks.push_back(exponent);
  return report;
}

}  // namespace amoeba
