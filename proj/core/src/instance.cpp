#include "amoeba/instance.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "amoeba/error.hpp"

namespace amoeba {

namespace {

constexpr int kMaxRedraws = 1'000'000;

}  // namespace

TspInstance::TspInstance(Matrix dist, std::optional<GenerationInfo> gen)
    : dist_(std::move(dist)), gen_(std::move(gen)) {
  const std::size_t n = dist_.size();
  if (n < 3) throw InvalidInstance("instance needs at least 3 cities, got " + std::to_string(n));
  for (std::size_t v = 0; v < n; ++v) {
    if (dist_(v, v) != 0.0) throw InvalidInstance("diagonal distance must be 0");
    for (std::size_t u = v + 1; u < n; ++u) {
      const double d = dist_(v, u);
      if (d != dist_(u, v)) throw InvalidInstance("distance matrix is not symmetric");
      if (!(d > 0.0) || !std::isfinite(d)) {
        throw InvalidInstance("off-diagonal distances must be positive and finite");
      }
    }
  }
}

ParamSet default_params(const TspInstance& inst) {
  ParamSet p;
  p.nu = compute_nu(inst, p.lambda, p.mu);
  return p;
}

TspInstance generate_map(std::size_t n, std::uint64_t seed, double mean, double sd) {
  if (n < 3) throw InvalidInstance("instance needs at least 3 cities, got " + std::to_string(n));
  if (!(sd >= 0.0)) throw InvalidInstance("standard deviation must be non-negative");
  if (sd == 0.0 && !(mean > 0.0)) throw InvalidInstance("degenerate map needs a positive mean");

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(mean, sd > 0.0 ? sd : 1.0);
  auto draw = [&]() {
    if (sd == 0.0) return mean;
    for (int i = 0; i < kMaxRedraws; ++i) {
      const double d = normal(rng);
      if (d > 0.0) return d;
    }
    throw InvalidInstance("could not draw a positive distance; mean is too far below zero");
  };

  Matrix dist(n, 0.0);
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t u = v + 1; u < n; ++u) {
      const double d = draw();
      dist(v, u) = d;
      dist(u, v) = d;
    }
  }
  return TspInstance(std::move(dist), GenerationInfo{seed, mean, sd});
}

double max_two_edge_path(const TspInstance& inst) {
  // For a fixed middle city the longest path uses its two longest incident edges.
  const std::size_t n = inst.n();
  double best = 0.0;
  for (std::size_t mid = 0; mid < n; ++mid) {
    double first = 0.0;
    double second = 0.0;
    for (std::size_t u = 0; u < n; ++u) {
      if (u == mid) continue;
      const double d = inst.distance(mid, u);
      if (d > first) {
        second = first;
        first = d;
      } else if (d > second) {
        second = d;
      }
    }
    best = std::max(best, first + second);
  }
  return best;
}

double compute_nu(const TspInstance& inst, double lambda, double mu) {
  if (!(lambda > 0.0) || !(mu > 0.0)) throw ConfigError("lambda and mu must be positive");
  const double penalty = std::min(lambda, mu);
  const double path = max_two_edge_path(inst);
  const double nu_star = penalty / path;

  const double exponent = std::floor(std::log10(nu_star));
  const double scale = std::pow(10.0, 2.0 - exponent);
  // The small bias absorbs representation error so 0.0025 does not become 0.00249.
  double digits = std::floor(nu_star * scale + 1e-9);
  double nu = digits / scale;
  while (nu * path > penalty * (1.0 + 1e-12) && digits > 1.0) {
    digits -= 1.0;
    nu = digits / scale;
  }
  return nu;
}

bool nu_is_calibrated(const TspInstance& inst, const ParamSet& params) {
  if (!(params.nu > 0.0)) return false;
  return params.nu * max_two_edge_path(inst) <= std::min(params.lambda, params.mu) * (1.0 + 1e-12);
}

double cost_weight(std::size_t v, std::size_t k, std::size_t u, std::size_t l, const ParamSet& params,
                   const TspInstance& inst) {
  const std::size_t n = inst.n();
  assert(v < n && k < n && u < n && l < n);
  if (v == u) return k != l ? -params.lambda : 0.0;
  if (k == l) return -params.mu;
  const bool adjacent = (k + 1 == l) || (l + 1 == k);
  const bool wraps = (k == n - 1 && l == 0) || (k == 0 && l == n - 1);
  if (adjacent || wraps) return -params.nu * inst.distance(v, u);
  return 0.0;
}

double cost_function(const BinaryMatrix& x_bin, const ParamSet& params, const TspInstance& inst) {
  const std::size_t n = inst.n();
  std::vector<std::pair<std::size_t, std::size_t>> support;
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t k = 0; k < n; ++k) {
      if (x_bin(v, k) != 0) support.emplace_back(v, k);
    }
  }
  double sum = 0.0;
  for (const auto& [v, k] : support) {
    for (const auto& [u, l] : support) sum += cost_weight(v, k, u, l, params, inst);
  }
  return -0.5 * sum;
}

DecodedSolution decode_solution(const Matrix& x) {
  const std::size_t n = x.size();
  DecodedSolution out{BinaryMatrix(n, 0), std::nullopt};
  std::vector<std::size_t> row_sum(n, 0);
  std::vector<std::size_t> col_sum(n, 0);
  Tour tour(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t k = 0; k < n; ++k) {
      if (x(v, k) >= kOccupancyThreshold) {
        out.x_bin(v, k) = 1;
        ++row_sum[v];
        ++col_sum[k];
        tour[k] = v;
      }
    }
  }
  const auto one = [](std::size_t s) { return s == 1; };
  if (n > 0 && std::all_of(row_sum.begin(), row_sum.end(), one) &&
      std::all_of(col_sum.begin(), col_sum.end(), one)) {
    out.tour = std::move(tour);
  }
  return out;
}

Matrix tour_to_matrix(const Tour& tour) {
  Matrix x(tour.size(), 0.0);
  for (std::size_t k = 0; k < tour.size(); ++k) x(tour[k], k) = 1.0;
  return x;
}

bool is_permutation(const Tour& tour, std::size_t n) {
  if (tour.size() != n) return false;
  std::vector<bool> seen(n, false);
  for (std::size_t city : tour) {
    if (city >= n || seen[city]) return false;
    seen[city] = true;
  }
  return true;
}

double route_length(const Tour& tour, const TspInstance& inst) {
  if (!is_permutation(tour, inst.n())) throw InvalidInstance("tour is not a permutation of the cities");
  double total = 0.0;
  for (std::size_t k = 0; k < tour.size(); ++k) {
    total += inst.distance(tour[k], tour[(k + 1) % tour.size()]);
  }
  return total;
}

double estimated_route_length(std::size_t n) { return 100.0 * static_cast<double>(n); }

std::pair<Tour, double> brute_force_optimum(const TspInstance& inst) {
  const std::size_t n = inst.n();
  if (n > kBruteForceLimit) {
    throw InvalidInstance("brute force is limited to " + std::to_string(kBruteForceLimit) + " cities");
  }
  // City 0 is pinned first; tour[1] < tour[n-1] drops the mirrored duplicates.
  Tour tour(n);
  std::iota(tour.begin(), tour.end(), std::size_t{0});
  Tour best = tour;
  double best_len = route_length(tour, inst);
  do {
    if (tour[1] > tour[n - 1]) continue;
    const double len = route_length(tour, inst);
    if (len < best_len) {
      best_len = len;
      best = tour;
    }
  } while (std::next_permutation(tour.begin() + 1, tour.end()));
  return {best, best_len};
}

}  // namespace amoeba
