#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "amoeba/amoeba.hpp"
#include "config.hpp"

namespace amoeba::cli {

namespace {

struct VariantFlags {
  std::string preset;
  std::string a;
  std::string b;
  double b_factor = 1.0;
  std::vector<std::string> c;
  double normal_sd = 0.0;
};

void add_variant_flags(CLI::App& cmd, VariantFlags& f) {
  cmd.add_option("--preset", f.preset, "Variant preset: original, a1, a2, b1-b4, c1-c3, improved");
  cmd.add_option("--element-a", f.a, "Fluctuation: uniform, zero, normal");
  cmd.add_option("--element-b", f.b, "Elongation: original, scale, zero-delta-in, denom-n");
  cmd.add_option("--b-factor", f.b_factor, "Scale applied to the elongation with --element-b scale");
  cmd.add_option("--element-c", f.c, "Sigmoid replacements: o-const, l-outer-step, l-inner-step")->delimiter(',');
  cmd.add_option("--normal-sd", f.normal_sd, "Standard deviation of normal fluctuations");
}

bool has_element_flags(const VariantFlags& f) {
  return !f.a.empty() || !f.b.empty() || !f.c.empty() || f.normal_sd > 0.0 || f.b_factor != 1.0;
}

// Flags win over the config file; with neither the original model runs.
std::pair<std::string, VariantConfig> resolve_variant(const VariantFlags& f, const RunConfig& rc) {
  if (!f.preset.empty() && has_element_flags(f)) {
    throw ConfigError("--preset and --element-* flags are mutually exclusive");
  }
  if (!f.preset.empty()) return {f.preset, preset(f.preset)};
  if (has_element_flags(f)) {
    VariantConfig cfg;
    if (!f.a.empty()) cfg.element_a = parse_element_a(f.a);
    if (!f.b.empty()) {
      cfg.element_b = parse_element_b(f.b, f.b_factor);
    } else if (f.b_factor != 1.0) {
      throw ConfigError("--b-factor needs --element-b scale");
    }
    if (!f.c.empty()) cfg.element_c = parse_element_c(f.c);
    if (f.normal_sd > 0.0) cfg.normal_sd = f.normal_sd;
    validate(cfg);
    return {"custom", cfg};
  }
  if (rc.preset) return {*rc.preset, preset(*rc.preset)};
  if (rc.elements) return {"custom", *rc.elements};
  return {"original", preset("original")};
}

struct BatchFlags {
  std::string config;
  std::size_t n = 0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::uint64_t max_iters = 0;
  unsigned workers = 0;
  std::string map_policy;
  std::uint64_t map_seed = 0;
  std::string out;
  VariantFlags variant;
};

void add_batch_flags(CLI::App& cmd, BatchFlags& f, bool with_n) {
  cmd.add_option("--config", f.config, "Run configuration file (JSON)")->check(CLI::ExistingFile);
  if (with_n) cmd.add_option("--n", f.n, "Number of cities")->check(CLI::Range(3, 100000));
  cmd.add_option("--trials", f.trials, "Trials per configuration")->check(CLI::PositiveNumber);
  cmd.add_option("--seed", f.seed, "Global seed");
  cmd.add_option("--max-iters", f.max_iters, "Iteration budget per trial")->check(CLI::PositiveNumber);
  cmd.add_option("--workers", f.workers, "Worker threads (0 = all cores)");
  cmd.add_option("--map-policy", f.map_policy, "fresh (new map per trial) or fixed")
      ->check(CLI::IsMember({"fresh", "fixed"}));
  cmd.add_option("--map-seed", f.map_seed, "Map seed for --map-policy fixed");
  cmd.add_option("--out", f.out, "Results CSV path (default: stdout)");
  add_variant_flags(cmd, f.variant);
}

BatchSpec resolve_batch(const CLI::App& cmd, const BatchFlags& f, const RunConfig& rc) {
  BatchSpec spec;
  auto [name, cfg] = resolve_variant(f.variant, rc);
  spec.variant = name;
  spec.cfg = cfg;
  spec.params = rc.params;
  const CLI::Option* n_opt = cmd.get_option_no_throw("--n");
  spec.n = n_opt && n_opt->count() ? f.n : rc.n.value_or(20);
  spec.trials = cmd.count("--trials") ? f.trials : rc.trials.value_or(200);
  spec.global_seed = cmd.count("--seed") ? f.seed : rc.seed.value_or(1);
  spec.max_iters = cmd.count("--max-iters") ? f.max_iters : rc.max_iters.value_or(kDefaultMaxIters);
  spec.workers = cmd.count("--workers") ? f.workers : rc.workers.value_or(0);
  if (rc.map) spec.map = *rc.map;
  if (!f.map_policy.empty()) {
    spec.map.kind = f.map_policy == "fixed" ? MapPolicy::Kind::kFixed : MapPolicy::Kind::kFreshPerTrial;
  }
  if (cmd.count("--map-seed")) {
    if (spec.map.kind != MapPolicy::Kind::kFixed) throw ConfigError("--map-seed needs --map-policy fixed");
    spec.map.seed = f.map_seed;
  }
  if (spec.n < 3) throw ConfigError("n must be at least 3");
  return spec;
}

// Writes through `fn` to `path`, or to `out` when the path is empty or "-".
void emit(const std::string& path, std::ostream& out, const std::function<void(std::ostream&)>& fn) {
  if (path.empty() || path == "-") {
    fn(out);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ConfigError("cannot write " + path);
  fn(file);
  if (!file) throw ConfigError("failed writing " + path);
}

void write_plots(const std::string& prefix, const std::vector<ScalingPoint>& points,
                 const std::vector<AggregateStats>& stats) {
  std::ofstream a(prefix + "_iterations.csv", std::ios::binary);
  std::ofstream b(prefix + "_ratio.csv", std::ios::binary);
  if (!a || !b) throw ConfigError("cannot write plot files with prefix " + prefix);
  io::write_iterations_plot_csv(a, points);
  io::write_ratio_plot_csv(b, stats);
}

std::string fmt(std::optional<double> v, int precision) {
  if (!v) return "--";
  std::ostringstream s;
  s << std::fixed << std::setprecision(precision) << *v;
  return s.str();
}

int cmd_gen_map(std::size_t n, std::uint64_t seed, double mean, double sd, const std::string& path,
                std::ostream& out) {
  const TspInstance inst = generate_map(n, seed, mean, sd);
  emit(path, out, [&](std::ostream& o) { o << io::map_to_json(inst); });
  return kOk;
}

int cmd_solve(const CLI::App& cmd, const std::string& map_path, const std::string& config_path,
              const VariantFlags& vf, std::uint64_t seed, std::uint64_t max_iters, const std::string& trace_path,
              std::ostream& out) {
  const RunConfig rc = config_path.empty() ? RunConfig{} : load_run_config(config_path);
  const TspInstance inst = io::read_map(map_path);
  const auto [name, cfg] = resolve_variant(vf, rc);
  const ParamSet params = rc.params.params_for(inst);
  const std::uint64_t budget = cmd.count("--max-iters") ? max_iters : rc.max_iters.value_or(kDefaultMaxIters);
  const std::uint64_t trial_seed = cmd.count("--seed") ? seed : rc.seed.value_or(1);

  const TrialResult r = run_trial(inst, params, cfg, trial_seed, budget, !trace_path.empty());
  if (!trace_path.empty()) emit(trace_path, out, [&](std::ostream& o) { io::write_trace_csv(o, r.trace); });

  out << "variant:    " << name << " (" << describe(cfg) << ")\n";
  out << "cities:     " << inst.n() << "\n";
  out << "nu:         " << params.nu << "\n";
  if (!r.success) {
    out << "no solution within " << budget << " iterations\n";
    return kBudgetExhausted;
  }
  out << "iterations: " << r.iterations << "\n";
  out << "tour:      ";
  for (std::size_t city : *r.tour) out << ' ' << city;
  out << "\n";
  out << "R_calc:     " << fmt(r.r_calc, 3) << "\n";
  out << "ratio:      " << fmt(r.ratio, 4) << "  (R_calc / " << estimated_route_length(inst.n()) << ")\n";
  return kOk;
}

void print_stats(std::ostream& out, const std::vector<AggregateStats>& stats) {
  out << std::left << std::setw(10) << "variant" << std::setw(6) << "n" << std::setw(8) << "trials"
      << std::setw(10) << "success" << std::setw(12) << "iterations" << "ratio\n";
  for (const auto& s : stats) {
    out << std::left << std::setw(10) << s.variant << std::setw(6) << s.n << std::setw(8) << s.trials
        << std::setw(10) << fmt(s.success_rate, 3) << std::setw(12) << fmt(s.avg_iterations, 1)
        << fmt(s.avg_ratio, 3) << "\n";
  }
}

void print_report(std::ostream& out, const ReproduceReport& report) {
  out << "table " << report.table << "\n";
  print_stats(out, report.stats);
  out << "\n"
      << std::left << std::setw(18) << "row" << std::setw(16) << "metric" << std::setw(11) << "published"
      << std::setw(11) << "measured" << std::setw(22) << "accepted" << "verdict\n";
  for (const auto& c : report.checks) {
    const int prec = c.metric == "avg_iterations" ? 1 : 3;
    std::ostringstream window;
    window << "[" << fmt(c.low, prec) << ", " << fmt(c.high, prec) << "]";
    out << std::left << std::setw(18) << c.label << std::setw(16) << c.metric << std::setw(11)
        << fmt(c.published, prec) << std::setw(11) << fmt(c.measured, prec) << std::setw(22) << window.str()
        << (c.pass ? "PASS" : "FAIL") << "\n";
  }
  if (report.fit) {
    out << "\nfit: iterations ~ " << fmt(report.fit->prefactor, 3) << " * n^" << fmt(report.fit->exponent, 3)
        << "  (r^2 = " << fmt(report.fit->r_squared, 4) << ")\n";
  }
  out << (report.all_pass() ? "all checks passed" : "some checks failed") << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Amoeba-inspired TSP solver and experiment harness", "amoeba-tsp"};
  app.require_subcommand(1);

  // gen-map
  auto* gen = app.add_subcommand("gen-map", "Generate a random symmetric map as JSON");
  std::size_t gen_n = 0;
  std::uint64_t gen_seed = 0;
  double gen_mean = 100.0;
  double gen_sd = 17.0;
  std::string gen_out;
  gen->add_option("--n", gen_n, "Number of cities (>= 3)")->required()->check(CLI::Range(3, 100000));
  gen->add_option("--seed", gen_seed, "Map seed");
  gen->add_option("--mean", gen_mean, "Mean distance");
  gen->add_option("--sd", gen_sd, "Distance standard deviation")->check(CLI::NonNegativeNumber);
  gen->add_option("--out", gen_out, "Output path (default: stdout)");

  // solve
  auto* solve = app.add_subcommand("solve", "Run one search on a map file");
  std::string solve_map, solve_config, solve_trace;
  std::uint64_t solve_seed = 1;
  std::uint64_t solve_iters = kDefaultMaxIters;
  VariantFlags solve_variant;
  solve->add_option("--map", solve_map, "Map file written by gen-map")->required()->check(CLI::ExistingFile);
  solve->add_option("--config", solve_config, "Run configuration file (JSON)")->check(CLI::ExistingFile);
  solve->add_option("--seed", solve_seed, "Trial seed");
  solve->add_option("--max-iters", solve_iters, "Iteration budget")->check(CLI::PositiveNumber);
  solve->add_option("--trace", solve_trace, "Write per-step trace CSV to this path");
  add_variant_flags(*solve, solve_variant);

  // batch
  auto* batch = app.add_subcommand("batch", "Run seeded trials of one configuration and aggregate");
  BatchFlags batch_flags;
  add_batch_flags(*batch, batch_flags, true);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Run a batch per city count");
  BatchFlags sweep_flags;
  std::vector<std::size_t> sweep_ns;
  std::string sweep_fit, sweep_plots;
  add_batch_flags(*sweep, sweep_flags, false);
  sweep->add_option("--n-list", sweep_ns, "Comma-separated city counts")->delimiter(',');
  sweep->add_option("--fit-out", sweep_fit, "Also fit the scaling exponent and write JSON here");
  sweep->add_option("--plot-prefix", sweep_plots, "Write <prefix>_iterations.csv and <prefix>_ratio.csv");

  // fit-scaling
  auto* fit = app.add_subcommand("fit-scaling", "Fit iterations ~ c n^p on a results CSV");
  std::string fit_in, fit_out, fit_variant, fit_plots;
  bool fit_table5 = false;
  auto* fit_in_opt = fit->add_option("--in", fit_in, "Results CSV from batch or sweep")->check(CLI::ExistingFile);
  fit->add_flag("--table5", fit_table5, "Use the published improved-model iteration column")->excludes(fit_in_opt);
  fit->add_option("--variant", fit_variant, "Only use rows of this variant");
  fit->add_option("--out", fit_out, "Fit JSON path (default: stdout)");
  fit->add_option("--plot-prefix", fit_plots, "Write <prefix>_iterations.csv and <prefix>_ratio.csv");

  // reproduce
  auto* repro = app.add_subcommand("reproduce", "Run the preset list of a published table and compare");
  int repro_table = 0;
  ReproduceOptions repro_opts;
  std::string repro_out;
  repro->add_option("--table", repro_table, "Table number: 2, 3, 4 or 5")
      ->required()
      ->check(CLI::IsMember({2, 3, 4, 5}));
  repro->add_option("--trials", repro_opts.trials, "Trials per row")->check(CLI::PositiveNumber);
  repro->add_option("--seed", repro_opts.global_seed, "Global seed");
  repro->add_option("--max-iters", repro_opts.max_iters, "Iteration budget per trial")->check(CLI::PositiveNumber);
  repro->add_option("--workers", repro_opts.workers, "Worker threads (0 = all cores)");
  repro->add_option("--n-list", repro_opts.n_list, "City counts for table 5 (default: all published)")
      ->delimiter(',');
  repro->add_option("--out", repro_out, "Also write the results CSV here");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (*gen) return cmd_gen_map(gen_n, gen_seed, gen_mean, gen_sd, gen_out, out);

    if (*solve) {
      return cmd_solve(*solve, solve_map, solve_config, solve_variant, solve_seed, solve_iters, solve_trace, out);
    }

    if (*batch) {
      const RunConfig rc = batch_flags.config.empty() ? RunConfig{} : load_run_config(batch_flags.config);
      const BatchSpec spec = resolve_batch(*batch, batch_flags, rc);
      const std::vector<AggregateStats> stats{run_batch(spec)};
      emit(batch_flags.out.empty() ? rc.results_path.value_or("") : batch_flags.out, out,
           [&](std::ostream& o) { io::write_results_csv(o, stats); });
      return kOk;
    }

    if (*sweep) {
      const RunConfig rc = sweep_flags.config.empty() ? RunConfig{} : load_run_config(sweep_flags.config);
      const std::vector<std::size_t> ns = sweep->count("--n-list") ? sweep_ns : rc.n_list;
      if (ns.empty()) throw CLI::ValidationError("--n-list", "empty n-list");
      if (std::any_of(ns.begin(), ns.end(), [](std::size_t n) { return n < 3; })) {
        throw ConfigError("every n in the n-list must be at least 3");
      }
      const BatchSpec spec = resolve_batch(*sweep, sweep_flags, rc);
      const std::vector<AggregateStats> stats = run_sweep(spec, ns);
      emit(sweep_flags.out.empty() ? rc.results_path.value_or("") : sweep_flags.out, out,
           [&](std::ostream& o) { io::write_results_csv(o, stats); });
      const std::string fit_path = sweep_fit.empty() ? rc.fit_path.value_or("") : sweep_fit;
      const std::string plots = sweep_plots.empty() ? rc.plot_prefix.value_or("") : sweep_plots;
      if (!fit_path.empty() || !plots.empty()) {
        std::vector<ScalingPoint> points;
        for (const auto& s : stats) {
          if (s.avg_iterations) points.push_back({static_cast<double>(s.n), *s.avg_iterations});
        }
        if (!fit_path.empty()) {
          const ScalingFit f = fit_scaling(stats);
          emit(fit_path, out, [&](std::ostream& o) { o << io::fit_to_json(f); });
        }
        if (!plots.empty()) write_plots(plots, points, stats);
      }
      return kOk;
    }

    if (*fit) {
      std::vector<AggregateStats> stats;
      if (fit_table5) {
        for (const auto& row : published_table(5)) {
          AggregateStats s;
          s.variant = std::string(row.preset);
          s.n = row.n;
          s.success_rate = row.success_rate;
          s.avg_iterations = row.avg_iterations;
          s.avg_ratio = row.avg_ratio;
          stats.push_back(s);
        }
      } else if (!fit_in.empty()) {
        std::ifstream in(fit_in);
        stats = io::read_results_csv(in);
      } else {
        throw CLI::ValidationError("fit-scaling", "one of --in or --table5 is required");
      }
      if (!fit_variant.empty()) {
        std::erase_if(stats, [&](const AggregateStats& s) { return s.variant != fit_variant; });
      }
      const ScalingFit f = fit_scaling(stats);
      emit(fit_out, out, [&](std::ostream& o) { o << io::fit_to_json(f); });
      if (!fit_plots.empty()) write_plots(fit_plots, f.points, stats);
      return kOk;
    }

    if (*repro) {
      const ReproduceReport report = reproduce_table(repro_table, repro_opts);
      print_report(out, report);
      if (!repro_out.empty()) emit(repro_out, out, [&](std::ostream& o) { io::write_results_csv(o, report.stats); });
      return kOk;
    }
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace amoeba::cli
