#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "amoeba/matrix.hpp"

namespace amoeba {

/// Visit order: tour[k] is the city visited at step k. Cities and steps are 0-based.
using Tour = std::vector<std::size_t>;

struct GenerationInfo {
  std::uint64_t seed = 0;
  double mean = 100.0;
  double sd = 17.0;

  friend bool operator==(const GenerationInfo&, const GenerationInfo&) = default;
};

/// Symmetric TSP instance. Construction validates symmetry, a zero diagonal and
/// strictly positive off-diagonal distances; the object is immutable afterwards.
class TspInstance {
 public:
  TspInstance(Matrix dist, std::optional<GenerationInfo> gen = std::nullopt);

  [[nodiscard]] std::size_t n() const noexcept { return dist_.size(); }
  [[nodiscard]] double distance(std::size_t v, std::size_t u) const noexcept { return dist_(v, u); }
  [[nodiscard]] const Matrix& distances() const noexcept { return dist_; }
  [[nodiscard]] const std::optional<GenerationInfo>& generation() const noexcept { return gen_; }

  friend bool operator==(const TspInstance&, const TspInstance&) = default;

 private:
  Matrix dist_;
  std::optional<GenerationInfo> gen_;
};

/// Penalty and dynamics constants for one run.
struct ParamSet {
  double lambda = 0.5;     // row-constraint penalty
  double mu = 0.5;         // column-constraint penalty
  double nu = 0.0;         // distance weight, see compute_nu
  double delta = 0.003;    // uniform fluctuation bound
  double delta_out = 0.001;
  double delta_in = 0.001;
};

/// Default constants with nu calibrated for `inst`.
ParamSet default_params(const TspInstance& inst);

/// Draws every off-diagonal distance once from Normal(mean, sd), mirrored across the
/// diagonal. Non-positive draws are redrawn. Throws InvalidInstance for n < 3.
TspInstance generate_map(std::size_t n, std::uint64_t seed, double mean = 100.0, double sd = 17.0);

/// Longest two-edge path d(a,b) + d(b,c) over pairwise-distinct cities.
double max_two_edge_path(const TspInstance& inst);

/// Largest distance weight that keeps every two-edge path cost at or below
/// min(lambda, mu), rounded down to three significant figures.
double compute_nu(const TspInstance& inst, double lambda, double mu);

/// True when nu * max_two_edge_path <= min(lambda, mu) (relative slack 1e-12).
bool nu_is_calibrated(const TspInstance& inst, const ParamSet& params);

/// Entry W_{Vk,Ul} of the cost tensor; all indices 0-based and < n.
double cost_weight(std::size_t v, std::size_t k, std::size_t u, std::size_t l, const ParamSet& params,
                   const TspInstance& inst);

/// E = -1/2 * sum W_{Vk,Ul} x_Vk x_Ul.
double cost_function(const BinaryMatrix& x_bin, const ParamSet& params, const TspInstance& inst);

struct DecodedSolution {
  BinaryMatrix x_bin;
  std::optional<Tour> tour;
};

inline constexpr double kOccupancyThreshold = 0.99;

/// Binarises with x = 1 iff X >= 0.99 and extracts the tour when x_bin is a
/// permutation matrix.
DecodedSolution decode_solution(const Matrix& x);

/// 1.0-valued permutation matrix for a tour.
Matrix tour_to_matrix(const Tour& tour);

bool is_permutation(const Tour& tour, std::size_t n);

/// Closed route length including the edge back to the first city.
double route_length(const Tour& tour, const TspInstance& inst);

/// Expected route length of a random tour on the generated maps: 100 n.
double estimated_route_length(std::size_t n);

inline constexpr std::size_t kBruteForceLimit = 10;

/// Exhaustive search over all (n-1)!/2 distinct tours. Throws InvalidInstance for n > 10.
std::pair<Tour, double> brute_force_optimum(const TspInstance& inst);

}  // namespace amoeba
