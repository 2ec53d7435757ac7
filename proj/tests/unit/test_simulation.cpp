#include <doctest.h>

#include <cmath>
#include <vector>

#include "flicker/equilibria.hpp"
#include "flicker/error.hpp"
#include "flicker/random.hpp"
#include "flicker/simulation.hpp"

using namespace flicker;
using doctest::Approx;

namespace {

SimConfig small(double c, double l, std::int64_t t_max = 2000, std::int64_t burn_in = 100) {
  SimConfig cfg;
  cfg.eco.c = c;
  cfg.adapt.l = l;
  cfg.t_max = t_max;
  cfg.burn_in = burn_in;
  return cfg;
}

// Second, independent implementation of the update loop: explicit per-step
// formulas and random-access draws instead of step_coupled and a sequence.
Trajectory replay(const SimConfig& cfg, std::uint64_t replicate) {
  const NormalStream stream(cfg.seed, replicate);
  double x = cfg.x0.value(), y = cfg.y0.value(), i = cfg.i0;
  const double r = cfg.eco.r, K = cfg.eco.K, c = cfg.eco.c, h = cfg.eco.h;
  Trajectory tr;
  tr.t0 = cfg.burn_in;
  for (std::int64_t t = 0; t < cfg.t_max; ++t) {
    if (t >= cfg.burn_in) {
      tr.xs.push_back(x);
      tr.ys.push_back(y);
      tr.is.push_back(i);
    }
    const double eta = cfg.noise.mu + cfg.noise.beta * stream.standard_normal(static_cast<std::uint64_t>(t));
    const double x2 = x * x;
    double x_next = (r * x * (1.0 - x / K) - c * x2 / (x2 + h * h)) + (1.0 + i) * x;
    if (x_next < 0.0) x_next = 0.0;
    const double i_next = (1.0 - 1.0 / cfg.noise.T) * i + eta;
    const double y_next = cfg.adapt.l * (x - y) + y;
    x = x_next;
    i = i_next;
    y = y_next;
  }
  return tr;
}

}  // namespace

TEST_CASE("noise-free trajectories") {
  SUBCASE("stays at the high equilibrium") {
    SimConfig cfg = small(1.0, 1.0);
    cfg.noise.beta = 0.0;
    const auto tr = run_trajectory(cfg);
    for (std::size_t k = 0; k < tr.size(); ++k) {
      CHECK(tr.xs[k] == Approx(8.88908412).epsilon(1e-8));
      CHECK(tr.ys[k] == Approx(8.88908412).epsilon(1e-8));
      CHECK(tr.is[k] == 0.0);
    }
  }
  SUBCASE("logistic carrying capacity") {
    SimConfig cfg = small(0.0, 0.01, 50, 0);
    cfg.noise.beta = 0.0;
    cfg.x0 = 10.0;
    const auto tr = run_trajectory(cfg);
    for (std::size_t k = 1; k < tr.size(); ++k) CHECK(tr.xs[k] == 10.0);
  }
  SUBCASE("full adaptation lags the environment by one step") {
    SimConfig cfg = small(1.95, 1.0, 300, 0);
    cfg.noise.beta = 0.0;
    cfg.x0 = 3.0;
    cfg.y0 = 0.5;
    const auto tr = run_trajectory(cfg);
    for (std::size_t k = 1; k < tr.size(); ++k) CHECK(tr.ys[k] == tr.xs[k - 1]);
  }
  SUBCASE("satisfies the recurrences exactly") {
    SimConfig cfg = small(2.2, 0.05, 400, 0);
    cfg.noise.beta = 0.0;
    cfg.i0 = 0.2;
    cfg.x0 = 6.0;
    cfg.y0 = 1.0;
    const auto tr = run_trajectory(cfg);
    for (std::size_t k = 0; k + 1 < tr.size(); ++k) {
      CHECK(tr.xs[k + 1] == step_environment(tr.xs[k], tr.is[k], cfg.eco));
      CHECK(tr.is[k + 1] == step_noise(tr.is[k], cfg.noise, 0.0));
      CHECK(tr.ys[k + 1] == step_adaptation(tr.xs[k], tr.ys[k], cfg.adapt));
    }
  }
}

TEST_CASE("stochastic trajectory matches an independent replay bit for bit") {
  SimConfig cfg = small(1.95, 0.01, 5000, 250);
  cfg.x0 = *upper_stable_equilibrium(cfg.eco);
  cfg.y0 = cfg.x0;
  for (std::uint64_t rep : {0ULL, 1ULL, 12ULL}) {
    const auto a = run_trajectory(cfg, rep);
    const auto b = replay(cfg, rep);
    CHECK(a.xs == b.xs);
    CHECK(a.ys == b.ys);
    CHECK(a.is == b.is);
  }
}

TEST_CASE("burn-in and indexing") {
  const auto tr = run_trajectory(small(1.95, 0.01, 1000, 300));
  CHECK(tr.size() == 700);
  CHECK(tr.ys.size() == 700);
  CHECK(tr.is.size() == 700);
  CHECK(tr.t0 == 300);
  // The first retained sample is the state at step burn_in.
  SimConfig no_burn = small(1.95, 0.01, 1000, 0);
  const auto full = run_trajectory(no_burn);
  CHECK(full.xs[300] == tr.xs[0]);
  CHECK(full.xs[999] == tr.xs.back());
  for (double x : full.xs) CHECK(x >= 0.0);
}

TEST_CASE("default initial conditions") {
  const SimConfig cfg = small(1.95, 0.01);
  const auto s = initial_state(cfg);
  CHECK(s.x == Approx(7.41826868).epsilon(1e-8));
  CHECK(s.y == s.x);
  CHECK(s.i == 0.0);
  CHECK(initial_state(small(3.1, 0.01)).x < 1.0);
}

TEST_CASE("determinism and replicate streams") {
  const SimConfig cfg = small(1.95, 0.01);
  const auto a = run_trajectory(cfg, 3);
  const auto b = run_trajectory(cfg, 3);
  CHECK(a.xs == b.xs);
  CHECK(a.config_fingerprint == b.config_fingerprint);
  CHECK(run_trajectory(cfg, 4).xs != a.xs);
  SimConfig other = cfg;
  other.seed += 1;
  CHECK(run_trajectory(other, 3).xs != a.xs);
}

TEST_CASE("config fingerprint tracks every field") {
  const SimConfig base;
  std::vector<SimConfig> variants(14, base);
  variants[0].eco.r = 1.1;
  variants[1].eco.K = 11;
  variants[2].eco.c = 1.5;
  variants[3].eco.h = 1.1;
  variants[4].noise.T = 20;
  variants[5].noise.beta = 0.08;
  variants[6].noise.mu = 0.01;
  variants[7].adapt.l = 0.02;
  variants[8].wellbeing = case2_profile();
  variants[9].t_max = 40000;
  variants[10].burn_in = 10;
  variants[11].x0 = 8.0;
  variants[12].i0 = 0.1;
  variants[13].seed = 99;
  for (const auto& v : variants) CHECK(fingerprint(v) != fingerprint(base));
  CHECK(fingerprint(base) == fingerprint(SimConfig{}));
}

TEST_CASE("ensembles") {
  SUBCASE("one replicate has zero standard error") {
    const SimConfig cfg = small(1.95, 0.01);
    const auto s = run_ensemble(cfg, 1);
    const auto tr = run_trajectory(cfg, 0);
    REQUIRE(s.replicates.size() == 1);
    CHECK(s.mean_payoff == average_payoff(tr.xs, cfg.wellbeing.params));
    CHECK(s.mean_utility == average_utility(tr.xs, tr.ys, cfg.wellbeing.params));
    CHECK(s.stderr_payoff == 0.0);
    CHECK(s.stderr_utility == 0.0);
  }
  SUBCASE("noise-free replicates are identical") {
    SimConfig cfg = small(1.95, 0.01);
    cfg.noise.beta = 0.0;
    const auto s = run_ensemble(cfg, 6);
    for (const auto& r : s.replicates) CHECK(r.avg_payoff == s.replicates[0].avg_payoff);
    CHECK(s.stderr_payoff == 0.0);
    CHECK(s.stderr_utility == 0.0);
  }
  SUBCASE("independent of thread count") {
    const SimConfig cfg = small(2.2, 0.01, 5000, 500);
    const auto a = run_ensemble(cfg, 9, 1);
    const auto b = run_ensemble(cfg, 9, 4);
    CHECK(a.mean_payoff == b.mean_payoff);
    CHECK(a.mean_utility == b.mean_utility);
    CHECK(a.stderr_utility == b.stderr_utility);
    for (std::size_t k = 0; k < a.replicates.size(); ++k) CHECK(a.replicates[k].avg_utility == b.replicates[k].avg_utility);
  }
  SUBCASE("bounds") {
    const SimConfig cfg = small(1.95, 0.001, 20000, 2000);
    const auto s = run_ensemble(cfg, 4);
    for (const auto& r : s.replicates) {
      CHECK(r.avg_utility <= r.avg_payoff);
      CHECK(r.avg_utility > 0.0);
    }
  }
  SUBCASE("invalid replicate count") {
    CHECK_THROWS_AS(run_ensemble(small(1.0, 0.1), 0), InvalidConfig);
  }
}

TEST_CASE("utility follows payoff closely at high adaptive capacity") {
  SimConfig cfg;
  cfg.eco.c = 1.0;
  cfg.adapt.l = 0.1;
  const auto s = run_ensemble(cfg, 20);
  const double ratio = s.mean_utility / s.mean_payoff;
  // Frozen from this simulation (defaults, 20 replicates): ~0.84.
  CHECK(ratio > 0.8);
  CHECK(ratio < 0.9);
  cfg.adapt.l = 0.001;
  CHECK(run_ensemble(cfg, 20).mean_utility < s.mean_utility);
}

TEST_CASE("config validation") {
  SimConfig cfg;
  cfg.t_max = 10;
  cfg.burn_in = 10;
  CHECK_THROWS_AS(run_trajectory(cfg), InvalidConfig);
  cfg = SimConfig{};
  cfg.adapt.l = 2.0;
  CHECK_THROWS_AS(run_trajectory(cfg), InvalidConfig);
  cfg = SimConfig{};
  cfg.x0 = -1.0;
  CHECK_THROWS_AS(run_trajectory(cfg), InvalidConfig);
}
