#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "flicker/dynamics.hpp"
#include "flicker/error.hpp"
#include "flicker/random.hpp"
#include "flicker/stats.hpp"

using namespace flicker;
using doctest::Approx;

namespace {
const EcoParams kUnit{1.0, 10.0, 1.0, 1.0};
}

TEST_CASE("growth increment") {
  CHECK(growth_increment(0.0, kUnit) == 0.0);
  CHECK(growth_increment(0.0, {2.3, 7.0, 3.3, 0.4}) == 0.0);
  // 1*10*(1 - 1) - 1*100/101
  CHECK(growth_increment(10.0, kUnit) == Approx(-100.0 / 101.0).epsilon(1e-14));
  CHECK(growth_increment(5.0, {1.0, 10.0, 0.0, 1.0}) == Approx(2.5).epsilon(1e-15));
  CHECK(growth_increment(10.0, kUnit) < 0.0);
}

TEST_CASE("environment step") {
  CHECK(step_environment(0.0, 0.0, kUnit) == 0.0);
  CHECK(step_environment(10.0, 0.0, kUnit) == Approx(10.0 - 100.0 / 101.0).epsilon(1e-14));
  CHECK(step_environment(10.0, 0.0, kUnit) == Approx(9.009901).epsilon(1e-7));
  SUBCASE("clamps at zero") {
    // raw = 0.9 + (1 - 2) * 1 = -0.1
    CHECK(step_environment(1.0, -2.0, {1.0, 10.0, 0.0, 1.0}) == 0.0);
  }
  SUBCASE("never negative") {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> ux(0.0, 20.0), ui(-5.0, 5.0), uc(0.0, 4.0);
    for (int k = 0; k < 10000; ++k) {
      EcoParams p{1.0, 10.0, uc(gen), 1.0};
      CHECK(step_environment(ux(gen), ui(gen), p) >= 0.0);
    }
  }
}

TEST_CASE("noise step") {
  NoiseParams np{30.0, 0.07, 0.0};
  CHECK(step_noise(0.3, np, 0.0) == Approx(29.0 / 30.0 * 0.3).epsilon(1e-15));
  CHECK(step_noise(0.3, np, 0.0) == Approx(0.29));
  CHECK(step_noise(0.0, np, 0.05) == 0.05);
  NoiseParams memoryless{1.0, 0.07, 0.0};
  for (double e : {-1.3, 0.0, 0.42, 7.0}) CHECK(step_noise(0.9, memoryless, e) == e);
}

TEST_CASE("adaptation step") {
  CHECK(step_adaptation(8.2, 3.0, {1.0}) == 8.2);
  CHECK(step_adaptation(8.2, 3.0, {0.0}) == 3.0);
  CHECK(step_adaptation(8.0, 4.0, {0.01}) == Approx(4.04).epsilon(1e-15));

  SUBCASE("contraction towards x") {
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> u(0.0, 20.0), ul(0.0, 1.0);
    for (int k = 0; k < 1000; ++k) {
      const double x = u(gen), y = u(gen), l = ul(gen);
      const double y1 = step_adaptation(x, y, {l});
      CHECK(std::abs(y1 - x) == Approx((1.0 - l) * std::abs(y - x)).epsilon(1e-12));
    }
  }
  SUBCASE("geometric approach to a constant environment") {
    double y = 0.0;
    for (int t = 0; t < 50; ++t) y = step_adaptation(5.0, y, {0.2});
    CHECK(std::abs(y - 5.0) == Approx(5.0 * std::pow(0.8, 50)).epsilon(1e-9));
  }
}

TEST_CASE("coupled step") {
  const NoiseParams np{30.0, 0.07, 0.0};
  SUBCASE("origin is invariant for any parameters") {
    for (double c : {0.0, 1.0, 3.9})
      for (double l : {0.0, 0.5, 1.0}) {
        const auto s = step_coupled({0, 0, 0, 4}, {1.3, 12.0, c, 0.7}, np, {l}, 0.0);
        CHECK(s == SystemState{0.0, 0.0, 0.0, 5});
      }
  }
  SUBCASE("composition of the single-variable steps") {
    const auto s = step_coupled({10.0, 0.0, 10.0, 0}, kUnit, np, {1.0}, 0.0);
    CHECK(s.x == Approx(9.009901).epsilon(1e-7));
    CHECK(s.i == 0.0);
    CHECK(s.y == 10.0);
    CHECK(s.t == 1);
  }
  SUBCASE("fixed point preserved with zero noise") {
    // Pure logistic: K is a fixed point.
    const EcoParams logistic{1.0, 10.0, 0.0, 1.0};
    const auto s = step_coupled({10.0, 0.0, 10.0, 7}, logistic, np, {0.3}, 0.0);
    CHECK(s == SystemState{10.0, 0.0, 10.0, 8});
  }
  SUBCASE("adaptation reads x_t, not x_{t+1}") {
    const SystemState s0{10.0, 0.0, 2.0, 0};
    const AdaptationParams ap{0.5};
    const auto s1 = step_coupled(s0, kUnit, np, ap, 0.0);
    const double synchronous = step_adaptation(s0.x, s0.y, ap);
    const double sequential = step_adaptation(s1.x, s0.y, ap);
    CHECK(s1.y == synchronous);
    CHECK(s1.y != sequential);
  }
  SUBCASE("environment reads i_t, not i_{t+1}") {
    const SystemState s0{5.0, 0.1, 5.0, 0};
    const auto s1 = step_coupled(s0, kUnit, np, {0.1}, 0.3);
    CHECK(s1.x == step_environment(5.0, 0.1, kUnit));
    CHECK(s1.x != step_environment(5.0, s1.i, kUnit));
  }
}

TEST_CASE("red noise stationary standard deviation") {
  // AR(1) with memory phi has stationary sd beta / sqrt(1 - phi^2).
  const NoiseParams np{30.0, 0.07, 0.0};
  const double phi = np.memory();
  const double expected = np.beta / std::sqrt(1.0 - phi * phi);
  CHECK(expected == Approx(0.2732).epsilon(1e-3));

  NormalSequence eta(2024, 0);
  const std::size_t n = 1000000;
  std::vector<double> is(n);
  double i = 0.0;
  for (std::size_t t = 0; t < 1000; ++t) i = step_noise(i, np, eta.next(0.0, np.beta));
  for (auto& v : is) v = i = step_noise(i, np, eta.next(0.0, np.beta));
  CHECK(sample_stddev(is) == Approx(expected).epsilon(0.05));
}

TEST_CASE("parameter validation") {
  CHECK_NOTHROW(validate(kUnit));
  CHECK_THROWS_AS(validate(EcoParams{0.0, 10.0, 1.0, 1.0}), InvalidConfig);
  CHECK_THROWS_AS(validate(EcoParams{1.0, -1.0, 1.0, 1.0}), InvalidConfig);
  CHECK_THROWS_AS(validate(EcoParams{1.0, 10.0, -0.1, 1.0}), InvalidConfig);
  CHECK_THROWS_AS(validate(EcoParams{1.0, 10.0, 1.0, 0.0}), InvalidConfig);
  CHECK_THROWS_AS(validate(NoiseParams{0.5, 0.07, 0.0}), InvalidConfig);
  CHECK_THROWS_AS(validate(NoiseParams{30.0, -0.07, 0.0}), InvalidConfig);
  CHECK_THROWS_AS(validate(AdaptationParams{2.0}), InvalidConfig);
  CHECK_THROWS_AS(validate(AdaptationParams{-0.1}), InvalidConfig);
  CHECK_THROWS_AS(validate(SystemState{-1.0, 0.0, 0.0, 0}), InvalidConfig);
  try {
    validate(AdaptationParams{2.0});
  } catch (const ValidationError& e) {
    CHECK(e.field() == "adapt.l");
  }
}
