#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "amoeba/dynamics.hpp"
#include "amoeba/instance.hpp"

namespace amoeba {

inline constexpr std::uint64_t kDefaultMaxIters = 3000;

/// Scalar view of one step, as written to trace CSVs.
struct TraceRow {
  std::uint64_t t = 0;
  std::size_t l_off = 0;
  double sum_x = 0.0;
  double stock = 0.0;
  double total_o = 0.0;
  double residual = 0.0;  // conservation_residual of the step
};

struct TrialResult {
  bool success = false;
  std::uint64_t iterations = 0;
  std::optional<Tour> tour;
  std::optional<double> r_calc;
  std::optional<double> ratio;  // r_calc / (100 n)
  AmoebaState final_state;
  std::vector<TraceRow> trace;  // empty unless requested
};

/// The tour encoded by X when its binarisation is a permutation matrix.
std::optional<Tour> check_termination(const Matrix& x);

/// Runs one search from the empty state, checking for a tour after every step, until
/// success or `max_iters` steps. Throws ConfigError when nu violates the two-edge
/// path bound or the config is invalid.
TrialResult run_trial(const TspInstance& inst, const ParamSet& params, const VariantConfig& cfg,
                      std::uint64_t seed, std::uint64_t max_iters = kDefaultMaxIters, bool trace = false);

}  // namespace amoeba
