#pragma once

// Independent reference computations used only by tests.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numeric>
#include <vector>

#include "amoeba/dynamics.hpp"
#include "amoeba/instance.hpp"

namespace amoeba::oracle {

/// max d(a,b) + d(b,c) by scanning all n(n-1)(n-2) ordered triples.
inline double max_two_edge_path_by_triples(const TspInstance& inst) {
  const std::size_t n = inst.n();
  double best = 0.0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) {
        if (a == b || b == c || a == c) continue;
        best = std::max(best, inst.distance(a, b) + inst.distance(b, c));
      }
  return best;
}

/// Naive re-summation of a closed tour.
inline double route_length_by_edges(const std::vector<std::size_t>& tour, const TspInstance& inst) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < tour.size(); ++i) total += inst.distance(tour[i], tour[i + 1]);
  return total + inst.distance(tour.back(), tour.front());
}

/// Full n^4 contraction of the cost tensor with INNER(X), written straight from the
/// six-case definition rather than the block decomposition.
inline Matrix dense_illumination_argument(const Matrix& x, const ParamSet& p, const TspInstance& inst,
                                          bool inner_step) {
  const std::size_t n = inst.n();
  auto weight = [&](std::size_t v, std::size_t k, std::size_t u, std::size_t l) -> double {
    const auto nn = static_cast<long>(n);
    const long kk = static_cast<long>(k) + 1;  // 1-based, as in the formula
    const long ll = static_cast<long>(l) + 1;
    if (v == u && k != l) return -p.lambda;
    if (v != u && k == l) return -p.mu;
    if (v != u && std::labs(kk - ll) == 1) return -p.nu * inst.distance(v, u);
    if (v != u && kk == nn && ll == 1) return -p.nu * inst.distance(v, u);
    if (v != u && kk == 1 && ll == nn) return -p.nu * inst.distance(v, u);
    return 0.0;
  };
  auto inner = [&](double value) {
    if (inner_step) return value - 0.6 >= 0.0 ? 1.0 : 0.0;
    return 1.0 / (1.0 + std::exp(-35.0 * (value - 0.6)));
  };
  Matrix out(n, 0.0);
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t k = 0; k < n; ++k) {
      double sum = 0.0;
      for (std::size_t u = 0; u < n; ++u)
        for (std::size_t l = 0; l < n; ++l) sum += weight(v, k, u, l) * inner(x(u, l));
      out(v, k) = sum;
    }
  return out;
}

/// Calls `fn` for every permutation of 0..n-1 (n! of them).
inline void for_each_permutation(std::size_t n, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  do {
    fn(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
}

}  // namespace amoeba::oracle
