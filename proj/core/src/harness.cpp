#include "amoeba/harness.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <utility>

#include "amoeba/error.hpp"

namespace amoeba {

namespace {

constexpr std::array<std::string_view, 11> kPresetNames = {
    "original", "a1", "a2", "b1", "b2", "b3", "b4", "c1", "c2", "c3", "improved"};

std::uint64_t splitmix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct MeanSd {
  std::optional<double> mean;
  std::optional<double> sd;
};

MeanSd mean_sd(const std::vector<double>& values) {
  MeanSd out;
  if (values.empty()) return out;
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / static_cast<double>(values.size());
  out.mean = mean;
  if (values.size() >= 2) {
    double sq = 0.0;
    for (double v : values) sq += (v - mean) * (v - mean);
    out.sd = std::sqrt(sq / static_cast<double>(values.size() - 1));
  }
  return out;
}

TrialSummary run_one(const BatchSpec& spec, std::size_t n, std::size_t index,
                     const std::optional<TspInstance>& fixed_map) {
  TrialSummary s;
  s.index = index;
  s.seed = derive_seed(spec.global_seed, index, SeedStream::kTrial);
  s.map_seed = fixed_map ? spec.map.seed : derive_seed(spec.global_seed, index, SeedStream::kMap);
  const TspInstance inst = fixed_map ? *fixed_map : generate_map(n, s.map_seed, spec.map.mean, spec.map.sd);
  const ParamSet params = spec.params.params_for(inst);
  const TrialResult r = run_trial(inst, params, spec.cfg, s.seed, spec.max_iters);
  s.success = r.success;
  s.iterations = r.iterations;
  s.r_calc = r.r_calc;
  s.ratio = r.ratio;
  return s;
}

}  // namespace

std::span<const std::string_view> preset_names() { return kPresetNames; }

VariantConfig preset(std::string_view name) {
  VariantConfig cfg;
  if (name == "original") return cfg;
  if (name == "a1") {
    cfg.element_a = Fluctuation::kZero;
  } else if (name == "a2") {
    cfg.element_a = Fluctuation::kNormal;
  } else if (name == "b1") {
    cfg.element_b = ElongationRule::scale_i(0.9);
  } else if (name == "b2") {
    cfg.element_b = ElongationRule::scale_i(1.1);
  } else if (name == "b3") {
    cfg.element_b = ElongationRule::zero_delta_in();
  } else if (name == "b4") {
    cfg.element_b = ElongationRule::denom_n();
  } else if (name == "c1") {
    cfg.element_c.constant_contraction = true;
  } else if (name == "c2") {
    cfg.element_c.outer_step = true;
  } else if (name == "c3") {
    cfg.element_c.inner_step = true;
  } else if (name == "improved") {
    cfg.element_a = Fluctuation::kNormal;
    cfg.element_b = ElongationRule::denom_n();
    cfg.element_c.constant_contraction = true;
  } else {
    throw ConfigError("unknown preset '" + std::string(name) + "'");
  }
  return cfg;
}

ParamSet ParamPolicy::params_for(const TspInstance& inst) const {
  ParamSet p;
  p.lambda = lambda;
  p.mu = mu;
  p.delta = delta;
  p.delta_out = delta_out;
  p.delta_in = delta_in;
  p.nu = nu ? *nu : compute_nu(inst, lambda, mu);
  return p;
}

std::uint64_t derive_seed(std::uint64_t global_seed, std::uint64_t index, SeedStream stream) noexcept {
  std::uint64_t z = splitmix64(global_seed);
  z = splitmix64(z ^ index);
  return splitmix64(z ^ static_cast<std::uint64_t>(stream));
}

AggregateStats aggregate(std::string variant, std::size_t n, std::vector<TrialSummary> trials) {
  std::sort(trials.begin(), trials.end(), [](const auto& a, const auto& b) { return a.index < b.index; });
  AggregateStats out;
  out.variant = std::move(variant);
  out.n = n;
  out.trials = trials.size();
  std::vector<double> iterations;
  std::vector<double> ratios;
  for (const auto& t : trials) {
    if (!t.success) continue;
    ++out.successes;
    iterations.push_back(static_cast<double>(t.iterations));
    ratios.push_back(*t.ratio);
  }
  out.success_rate = out.trials ? static_cast<double>(out.successes) / static_cast<double>(out.trials) : 0.0;
  const MeanSd it = mean_sd(iterations);
  const MeanSd ra = mean_sd(ratios);
  out.avg_iterations = it.mean;
  out.std_iterations = it.sd;
  out.avg_ratio = ra.mean;
  out.std_ratio = ra.sd;
  out.per_trial = std::move(trials);
  return out;
}

AggregateStats run_batch(const BatchSpec& spec) {
  if (spec.trials == 0) throw ConfigError("a batch needs at least one trial");
  validate(spec.cfg);

  std::optional<TspInstance> fixed_map;
  if (spec.map.kind == MapPolicy::Kind::kFixed) {
    fixed_map = generate_map(spec.n, spec.map.seed, spec.map.mean, spec.map.sd);
  }

  std::vector<TrialSummary> results(spec.trials);
  unsigned workers = spec.workers ? spec.workers : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, spec.trials));

  if (workers <= 1) {
    for (std::size_t i = 0; i < spec.trials; ++i) results[i] = run_one(spec, spec.n, i, fixed_map);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
      for (std::size_t i = next++; i < spec.trials; i = next++) {
        try {
          results[i] = run_one(spec, spec.n, i, fixed_map);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = spec.trials;
        }
      }
    };
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    pool.clear();
    if (failure) std::rethrow_exception(failure);
  }
  return aggregate(spec.variant, spec.n, std::move(results));
}

std::vector<AggregateStats> run_sweep(const BatchSpec& spec, std::span<const std::size_t> n_list) {
  std::vector<AggregateStats> out;
  out.reserve(n_list.size());
  for (std::size_t n : n_list) {
    BatchSpec s = spec;
    s.n = n;
    out.push_back(run_batch(s));
  }
  return out;
}

ScalingFit fit_scaling(std::vector<ScalingPoint> points) {
  if (points.size() < 3) throw ConfigError("scaling fit needs at least three points");
  for (const auto& p : points) {
    if (!(p.n > 0.0) || !(p.iterations > 0.0)) throw ConfigError("scaling fit needs positive n and iterations");
  }
  const double m = static_cast<double>(points.size());
  double sx = 0.0, sy = 0.0;
  for (const auto& p : points) {
    sx += std::log(p.n);
    sy += std::log(p.iterations);
  }
  const double mx = sx / m;
  const double my = sy / m;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& p : points) {
    const double dx = std::log(p.n) - mx;
    const double dy = std::log(p.iterations) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw ConfigError("scaling fit needs at least two distinct n");

  ScalingFit fit;
  fit.exponent = sxy / sxx;
  fit.prefactor = std::exp(my - fit.exponent * mx);
  fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  fit.points = std::move(points);
  return fit;
}

ScalingFit fit_scaling(std::span<const AggregateStats> stats) {
  std::vector<ScalingPoint> points;
  points.reserve(stats.size());
  for (const auto& s : stats) {
    if (!s.avg_iterations) {
      throw ConfigError("scaling fit needs a success at every n (none at n=" + std::to_string(s.n) + ")");
    }
    points.push_back({static_cast<double>(s.n), *s.avg_iterations});
  }
  return fit_scaling(std::move(points));
}

double sqrt_n_coefficient(std::span<const ScalingPoint> points) {
  double num = 0.0, den = 0.0;
  for (const auto& p : points) {
    num += p.iterations * std::sqrt(p.n);
    den += p.n;
  }
  return den > 0.0 ? num / den : 0.0;
}

}  // namespace amoeba
