#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "amoeba/harness.hpp"
#include "amoeba/instance.hpp"
#include "amoeba/solver.hpp"

namespace amoeba::io {

/// {"n": int, "dist": [n*n row-major], "gen": {"seed", "mean", "sd"} | null}
std::string map_to_json(const TspInstance& inst);
/// Throws InvalidInstance on malformed input.
TspInstance map_from_json(const std::string& text);

void write_map(const std::filesystem::path& path, const TspInstance& inst);
TspInstance read_map(const std::filesystem::path& path);

/// Columns: t,L_off,sum_X,S,total_O,residual
void write_trace_csv(std::ostream& out, std::span<const TraceRow> rows);

inline constexpr const char* kResultsHeader =
    "variant,n,trials,success_rate,avg_iterations,std_iterations,avg_ratio,std_ratio";

/// Absent averages are written as NA.
void write_results_csv(std::ostream& out, std::span<const AggregateStats> stats);
/// Reads rows back without per-trial data. Throws ConfigError on a bad header or row.
std::vector<AggregateStats> read_results_csv(std::istream& in);

/// {"points": [{"n", "avg_iterations"}], "exponent", "prefactor", "r_squared"}
std::string fit_to_json(const ScalingFit& fit);

/// n,avg_iterations,sqrt_n_fit
void write_iterations_plot_csv(std::ostream& out, std::span<const ScalingPoint> points);
/// n,avg_ratio,reference_0.9
void write_ratio_plot_csv(std::ostream& out, std::span<const AggregateStats> stats);

/// Shortest decimal text that round-trips the double.
std::string format_double(double value);

}  // namespace amoeba::io
