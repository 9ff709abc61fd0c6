#include <doctest.h>

#include "amoeba/error.hpp"
#include "amoeba/harness.hpp"
#include "amoeba/solver.hpp"
#include "oracles.hpp"

using namespace amoeba;

TEST_SUITE("solver") {
  TEST_CASE("check_termination") {
    CHECK_FALSE(check_termination(Matrix(5, 0.0)));
    const Tour t{3, 1, 4, 0, 2};
    const auto found = check_termination(tour_to_matrix(t));
    REQUIRE(found);
    CHECK(*found == t);
    Matrix extra = tour_to_matrix(t);
    extra(0, 0) = 1.0;
    CHECK_FALSE(check_termination(extra));
    // n occupied lanes that are not a permutation.
    Matrix doubled(3, 0.0);
    doubled(0, 0) = doubled(0, 1) = doubled(1, 2) = 1.0;
    CHECK_FALSE(check_termination(doubled));
  }

  TEST_CASE("zero fluctuations never settle on a 20-city map") {
    const TspInstance inst = generate_map(20, 5);
    const TrialResult r = run_trial(inst, default_params(inst), preset("a1"), 1, 3000);
    CHECK_FALSE(r.success);
    CHECK(r.iterations == 3000);
    CHECK_FALSE(r.tour);
    CHECK_FALSE(r.ratio);
  }

  TEST_CASE("improved model solves a small map and reports a consistent tour") {
    const TspInstance inst = generate_map(6, 13);
    const ParamSet p = default_params(inst);
    std::size_t successes = 0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const TrialResult r = run_trial(inst, p, preset("improved"), seed, 20000);
      if (!r.success) continue;
      ++successes;
      REQUIRE(r.tour);
      CHECK(is_permutation(*r.tour, 6));
      const double len = oracle::route_length_by_edges(*r.tour, inst);
      CHECK(*r.r_calc == doctest::Approx(len).epsilon(1e-12));
      CHECK(*r.ratio == doctest::Approx(len / 600.0).epsilon(1e-12));
      CHECK(r.final_state.t == r.iterations);
      CHECK(check_termination(r.final_state.x) == r.tour);
      CHECK(len >= brute_force_optimum(inst).second - 1e-9);
    }
    CHECK(successes > 0);
  }

  TEST_CASE("trials are reproducible and a shorter budget is a prefix") {
    const TspInstance inst = generate_map(8, 3);
    const ParamSet p = default_params(inst);
    const TrialResult a = run_trial(inst, p, preset("original"), 42, 400, true);
    const TrialResult b = run_trial(inst, p, preset("original"), 42, 400, true);
    CHECK(a.iterations == b.iterations);
    CHECK(a.final_state.x == b.final_state.x);
    CHECK(a.trace.size() == a.iterations);

    const TrialResult shorter = run_trial(inst, p, preset("original"), 42, 150, true);
    REQUIRE(shorter.trace.size() == 150);
    for (std::size_t i = 0; i < 150; ++i) {
      CHECK(shorter.trace[i].sum_x == a.trace[i].sum_x);
      CHECK(shorter.trace[i].l_off == a.trace[i].l_off);
    }
    const TrialResult other = run_trial(inst, p, preset("original"), 43, 150);
    CHECK_FALSE(other.final_state.x == shorter.final_state.x);
  }

  TEST_CASE("trace rows") {
    const TspInstance inst = generate_map(5, 1);
    const ParamSet p = default_params(inst);
    const TrialResult r = run_trial(inst, p, preset("a1"), 1, 50, true);
    REQUIRE(r.trace.size() == 50);
    CHECK(r.trace.front().t == 1);
    CHECK(r.trace.back().t == 50);
    CHECK(r.trace.front().l_off == 25);
    CHECK(r.trace.front().residual == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(r.trace.back().sum_x == doctest::Approx(0.05).epsilon(1e-9));
    CHECK(run_trial(inst, p, preset("a1"), 1, 50).trace.empty());
  }

  TEST_CASE("refuses an uncalibrated nu and an empty budget") {
    const TspInstance inst = generate_map(6, 2);
    ParamSet p = default_params(inst);
    CHECK_THROWS_AS(run_trial(inst, p, preset("original"), 1, 0), ConfigError);
    p.nu = 1.0;
    CHECK_THROWS_AS(run_trial(inst, p, preset("original"), 1, 10), ConfigError);
  }
}
