// Acceptance suite: one PASS/FAIL line per criterion. Exits nonzero if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "amoeba/amoeba.hpp"
#include "oracles.hpp"

using namespace amoeba;

namespace {

constexpr std::uint64_t kSeed = 20240601;
constexpr unsigned kWorkers = 0;  // all cores

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string num(std::optional<double> v, int precision = 4) {
  if (!v) return "NA";
  std::ostringstream s;
  s.precision(precision);
  s << std::fixed << *v;
  return s.str();
}

bool within_rel(std::optional<double> v, double target, double tol) {
  return v && std::abs(*v - target) <= tol * target;
}

bool within_abs(std::optional<double> v, double target, double tol) { return v && std::abs(*v - target) <= tol; }

AggregateStats batch(const char* name, std::size_t n, std::size_t trials, unsigned workers = kWorkers) {
  BatchSpec spec;
  spec.variant = name;
  spec.cfg = preset(name);
  spec.n = n;
  spec.trials = trials;
  spec.global_seed = kSeed;
  spec.workers = workers;
  return run_batch(spec);
}

std::string summary(const AggregateStats& s) {
  return "success_rate=" + num(s.success_rate, 3) + " avg_iterations=" + num(s.avg_iterations, 1) +
         " avg_ratio=" + num(s.avg_ratio, 3) + " (" + std::to_string(s.trials) + " trials)";
}

struct Sweep {
  std::vector<AggregateStats> stats;
  const AggregateStats& at(std::size_t n) const {
    return *std::find_if(stats.begin(), stats.end(), [&](const auto& s) { return s.n == n; });
  }
};

const Sweep& improved_sweep() {
  static const Sweep sweep = [] {
    Sweep s;
    for (std::size_t n : {10u, 20u, 50u, 100u}) s.stats.push_back(batch("improved", n, n <= 20 ? 200 : 50));
    return s;
  }();
  return sweep;
}

std::optional<AggregateStats> original_200;

Outcome c1() {
  original_200 = batch("original", 20, 200);
  const auto& s = *original_200;
  const bool pass = s.success_rate >= 0.97 && within_rel(s.avg_iterations, 1870.6, 0.15) &&
                    within_abs(s.avg_ratio, 0.951, 0.03);
  return {pass, summary(s) + "; want >=0.97, 1870.6 +-15%, 0.951 +-0.03"};
}

Outcome c2() {
  const auto s = batch("a1", 20, 100);
  return {s.success_rate == 0.0, summary(s) + "; want success_rate = 0"};
}

Outcome c3() {
  const auto s = batch("a2", 20, 200);
  const bool pass = s.success_rate >= 0.96 && within_rel(s.avg_iterations, 1326.8, 0.15);
  return {pass, summary(s) + "; want >=0.96, 1326.8 +-15%"};
}

Outcome c4() {
  const auto s = batch("b4", 20, 200);
  return {within_rel(s.avg_iterations, 1049.3, 0.15), summary(s) + "; want avg_iterations 1049.3 +-15%"};
}

Outcome c5() {
  const auto s = batch("c1", 20, 200);
  const bool pass = s.success_rate >= 0.99 && within_rel(s.avg_iterations, 974.5, 0.15);
  return {pass, summary(s) + "; want >=0.99, 974.5 +-15%"};
}

Outcome c6() {
  const auto s = batch("c3", 20, 200);
  const bool pass = within_abs(s.success_rate, 0.46, 0.10) && within_abs(s.avg_ratio, 1.000, 0.03);
  return {pass, summary(s) + "; want 0.46 +-0.10, ratio 1.000 +-0.03"};
}

Outcome c7() {
  const auto s = batch("improved", 20, 1000);
  const bool pass = s.success_rate == 1.0 && within_rel(s.avg_iterations, 276.3, 0.15) &&
                    within_abs(s.avg_ratio, 0.934, 0.03);
  return {pass, summary(s) + "; want 1.00, 276.3 +-15%, 0.934 +-0.03"};
}

Outcome c8() {
  const Sweep& sw = improved_sweep();
  std::string detail;
  for (const auto& s : sw.stats) detail += "n=" + std::to_string(s.n) + ":" + num(s.avg_iterations, 1) + " ";
  std::vector<ScalingPoint> points;
  for (const auto& s : sw.stats)
    if (s.avg_iterations) points.push_back({static_cast<double>(s.n), *s.avg_iterations});
  std::optional<double> exponent;
  if (points.size() == sw.stats.size()) exponent = fit_scaling(points).exponent;
  std::optional<double> ratio;
  if (sw.at(10).avg_iterations && sw.at(100).avg_iterations)
    ratio = *sw.at(100).avg_iterations / *sw.at(10).avg_iterations;
  const bool pass = exponent && *exponent >= 0.40 && *exponent <= 0.60 && within_rel(ratio, 3.12, 0.15);
  return {pass, detail + "exponent=" + num(exponent, 3) + " iters(100)/iters(10)=" + num(ratio, 3) +
                    "; want [0.40,0.60] and 3.12 +-15%"};
}

Outcome c9() {
  const Sweep& sw = improved_sweep();
  const auto r10 = sw.at(10).avg_ratio;
  const auto r100 = sw.at(100).avg_ratio;
  const bool pass = within_abs(r100, 0.859, 0.03) && r10 && *r100 < *r10;
  return {pass, "avg_ratio n=10:" + num(r10, 3) + " n=100:" + num(r100, 3) + "; want n=100 0.859 +-0.03 and below n=10"};
}

Outcome c10() {
  const TspInstance inst = generate_map(10, kSeed);
  const ParamSet p = default_params(inst);
  Stepper stepper(inst, p, preset("a1"));
  AmoebaState s = AmoebaState::initial(10);
  Rng rng(kSeed);
  auto total = [](const Matrix& x) { return std::accumulate(x.flat().begin(), x.flat().end(), 0.0); };
  std::size_t checked = 0;
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double stock = s.stock;
    const double before = total(s.x);
    const StepDiagnostics& d = stepper.advance(s, rng);
    if (d.l_off > 0 && stock == 0.0) {
      ++checked;
      worst = std::max(worst, std::abs(total(s.x) - before - p.delta_in));
    }
  }
  return {checked > 0 && worst <= 1e-12,
          std::to_string(checked) + " of 1000 steps checked, max |dSum - delta_in| = " + num(worst, 15)};
}

Outcome c11() {
  double worst = 0.0;
  std::size_t count = 0;
  for (std::uint64_t i = 0; i < 5; ++i) {
    const TspInstance inst = generate_map(5, kSeed + i);
    const ParamSet p = default_params(inst);
    oracle::for_each_permutation(5, [&](const std::vector<std::size_t>& perm) {
      BinaryMatrix x(5, 0);
      for (std::size_t k = 0; k < 5; ++k) x(perm[k], k) = 1;
      const double expected = p.nu * oracle::route_length_by_edges(perm, inst);
      worst = std::max(worst, std::abs(cost_function(x, p, inst) - expected) / expected);
      ++count;
    });
  }
  return {worst <= 1e-9, std::to_string(count) + " tours, max relative error " + num(worst, 15)};
}

Outcome c12() {
  std::vector<double> ratios;
  bool bound_ok = true;
  for (std::uint64_t i = 0; i < 20; ++i) {
    const TspInstance inst = generate_map(8, kSeed + 100 + i);
    const double best = brute_force_optimum(inst).second;
    const TrialResult r = run_trial(inst, default_params(inst), preset("improved"), kSeed + i);
    if (!r.success) continue;
    const double len = oracle::route_length_by_edges(*r.tour, inst);
    bound_ok = bound_ok && len >= best - 1e-9 * best;
    ratios.push_back(len / best);
  }
  std::optional<double> median;
  if (!ratios.empty()) {
    std::sort(ratios.begin(), ratios.end());
    const std::size_t m = ratios.size();
    median = m % 2 ? ratios[m / 2] : 0.5 * (ratios[m / 2 - 1] + ratios[m / 2]);
  }
  // The 1.15 band is a sanity target; only a median outside [1.0, 1.5] fails.
  const bool sane = median && *median >= 1.0 && *median <= 1.5;
  std::string note = median && *median > 1.15 ? " (above the 1.15 sanity band)" : "";
  return {bound_ok && sane, std::to_string(ratios.size()) + "/20 solved, all >= optimum: " +
                                (bound_ok ? "yes" : "no") + ", median ratio to optimum " + num(median, 4) + note};
}

Outcome c13() {
  // Criterion 1's batch again with a different worker count.
  if (!original_200) original_200 = batch("original", 20, 200);
  const auto again = batch("original", 20, 200, 4);
  const auto serial = batch("improved", 10, 50, 1);
  const auto pooled = batch("improved", 10, 50, 3);
  const bool pass = again == *original_200 && serial == pooled;
  return {pass, std::string("original n=20 workers 0 vs 4: ") + (again == *original_200 ? "identical" : "differ") +
                    "; improved n=10 workers 1 vs 3: " + (serial == pooled ? "identical" : "differ")};
}

}  // namespace

int main() {
  const std::vector<std::pair<int, std::function<Outcome()>>> criteria = {
      {1, c1}, {2, c2}, {3, c3}, {4, c4}, {5, c5}, {6, c6}, {7, c7},
      {8, c8}, {9, c9}, {10, c10}, {11, c11}, {12, c12}, {13, c13}};
  int failures = 0;
  for (const auto& [id, fn] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %2d: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", id, o.detail.c_str(), secs);
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
