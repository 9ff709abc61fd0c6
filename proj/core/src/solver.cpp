#include "amoeba/solver.hpp"

#include "amoeba/error.hpp"

namespace amoeba {

std::optional<Tour> check_termination(const Matrix& x) {
  // Cheap pre-check before building the full binary matrix: exactly n entries may pass.
  std::size_t hits = 0;
  for (double v : x.flat()) hits += v >= kOccupancyThreshold ? 1 : 0;
  if (hits != x.size()) return std::nullopt;
  return decode_solution(x).tour;
}

TrialResult run_trial(const TspInstance& inst, const ParamSet& params, const VariantConfig& cfg,
                      std::uint64_t seed, std::uint64_t max_iters, bool trace) {
  if (!nu_is_calibrated(inst, params)) {
    throw ConfigError("nu is not calibrated: nu * longest two-edge path exceeds min(lambda, mu)");
  }
  if (max_iters == 0) throw ConfigError("max_iters must be positive");
  validate(cfg);

  TrialResult result;
  result.final_state = AmoebaState::initial(inst.n());
  AmoebaState& state = result.final_state;
  Rng rng(seed);
  Stepper stepper(inst, params, cfg);
  if (trace) result.trace.reserve(max_iters);

  while (state.t < max_iters) {
    const StepDiagnostics& diag = stepper.advance(state, rng);
    if (trace) {
      result.trace.push_back({state.t, diag.l_off, diag.sum_x, state.stock, diag.total_o,
                              conservation_residual(diag, params.delta_in)});
    }
    if (auto tour = check_termination(state.x)) {
      result.success = true;
      result.r_calc = route_length(*tour, inst);
      result.ratio = *result.r_calc / estimated_route_length(inst.n());
      result.tour = std::move(tour);
      break;
    }
  }
  result.iterations = state.t;
  return result;
}

}  // namespace amoeba
