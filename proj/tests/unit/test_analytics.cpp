#include <doctest.h>

#include <cmath>
#include <vector>

#include "flicker/analytics.hpp"
#include "flicker/error.hpp"
#include "flicker/stats.hpp"

using namespace flicker;
using doctest::Approx;

namespace {

std::vector<double> series(std::initializer_list<char> labels) {
  std::vector<double> xs;
  for (char c : labels) xs.push_back(c == 'H' ? 7.0 : 0.5);
  return xs;
}

SimConfig base_config(std::int64_t t_max = 8000, std::int64_t burn_in = 1000) {
  SimConfig cfg;
  cfg.t_max = t_max;
  cfg.burn_in = burn_in;
  return cfg;
}

}  // namespace

TEST_CASE("basin classification") {
  const double sep = 1.85505598;
  CHECK(classify_basin(7.45, sep) == Basin::High);
  CHECK(classify_basin(0.73, sep) == Basin::Low);
  CHECK(classify_basin(sep, sep) == Basin::High);
  CHECK_THROWS_AS(classify_basin(1.0, 0.0), PreconditionError);
}

TEST_CASE("flicker statistics on hand-built series") {
  SUBCASE("constant high") {
    const auto st = flicker_stats(std::vector<double>(50, 7.0), 1.85);
    CHECK(st.n_transitions == 0);
    CHECK(st.fraction_high == 1.0);
    CHECK(st.residence_high == std::vector<std::int64_t>{50});
    CHECK(st.residence_low.empty());
  }
  SUBCASE("HHLLLH without debouncing") {
    const auto st = flicker_stats(series({'H', 'H', 'L', 'L', 'L', 'H'}), 1.85, 1);
    CHECK(st.n_transitions == 2);
    CHECK(st.residence_high == std::vector<std::int64_t>{2, 1});
    CHECK(st.residence_low == std::vector<std::int64_t>{3});
    CHECK(st.fraction_high == Approx(0.5));
  }
  SUBCASE("short excursions are absorbed by the debounce") {
    const auto xs = series({'H', 'H', 'L', 'L', 'H', 'H', 'H', 'L', 'L', 'L', 'L', 'L', 'H'});
    const auto raw = flicker_stats(xs, 1.85, 1);
    CHECK(raw.n_transitions == 4);
    const auto deb = flicker_stats(xs, 1.85, 3);
    // LL (2 < 3) stays high; LLLLL switches; the trailing H (1 < 3) stays low.
    CHECK(deb.n_transitions == 1);
    CHECK(deb.residence_high == std::vector<std::int64_t>{7});
    CHECK(deb.residence_low == std::vector<std::int64_t>{6});
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(flicker_stats(std::vector<double>{}, 1.0), EmptyTrajectory);
    CHECK_THROWS_AS(flicker_stats(std::vector<double>{1.0}, 1.0, 0), PreconditionError);
  }
}

TEST_CASE("flicker bookkeeping on simulated trajectories") {
  for (double c : {1.95, 2.2, 2.45}) {
    SimConfig cfg = base_config(20000, 0);
    cfg.eco.c = c;
    const double sep = *separatrix(cfg.eco);
    const auto tr = run_trajectory(cfg);
    for (int d : {1, 5, 20}) {
      const auto st = flicker_stats(tr, sep, d);
      std::int64_t total = 0;
      for (auto v : st.residence_high) total += v;
      for (auto v : st.residence_low) total += v;
      CHECK(total == static_cast<std::int64_t>(tr.size()));
      CHECK(st.n_transitions == static_cast<int>(st.residence_high.size() + st.residence_low.size()) - 1);
      CHECK(st.fraction_high >= 0.0);
      CHECK(st.fraction_high <= 1.0);
    }
    CHECK(flicker_stats(tr, sep, 1).n_transitions >= flicker_stats(tr, sep, 5).n_transitions);
  }
}

TEST_CASE("longer collapses at the higher extraction rate") {
  std::vector<double> fh_low, fh_high;
  for (std::uint64_t rep = 0; rep < 8; ++rep) {
    SimConfig cfg = base_config(25000, 0);
    cfg.eco.c = 1.95;
    fh_low.push_back(flicker_stats(run_trajectory(cfg, rep), *separatrix(cfg.eco)).fraction_high);
    cfg.eco.c = 2.45;
    fh_high.push_back(flicker_stats(run_trajectory(cfg, rep), *separatrix(cfg.eco)).fraction_high);
  }
  CHECK(mean(fh_high) < mean(fh_low));
}

TEST_CASE("utility sweep") {
  SUBCASE("perfect tracking without noise") {
    SimConfig cfg = base_config(3000, 500);
    cfg.noise.beta = 0.0;
    const std::vector<double> cs{0.5, 1.0, 1.95, 3.1};
    const std::vector<double> ls{1.0};
    for (const auto& row : utility_sweep(cfg, cs, ls, 2)) {
      CHECK(row.error.empty());
      CHECK(row.avg_utility == Approx(row.avg_payoff).epsilon(1e-12));
    }
  }
  SUBCASE("row order and regimes") {
    const std::vector<double> cs{1.0, 1.95, 3.1};
    const std::vector<double> ls{0.01, 0.1};
    const auto rows = utility_sweep(base_config(), cs, ls, 2, 3);
    REQUIRE(rows.size() == 6);
    CHECK(rows[0].l == 0.01);
    CHECK(rows[2].c == 3.1);
    CHECK(rows[3].l == 0.1);
    CHECK(rows[3].c == 1.0);
    CHECK(rows[0].regime == Regime::Regime1);
    CHECK(rows[1].regime == Regime::Regime2);
    CHECK(rows[2].regime == Regime::Regime3);
    for (const auto& r : rows) CHECK(r.avg_utility <= r.avg_payoff);
    // Payoff depends only on x, which does not depend on l.
    for (std::size_t k = 0; k < 3; ++k) CHECK(rows[k].avg_payoff == rows[k + 3].avg_payoff);
    CHECK(rows[0].avg_payoff > rows[2].avg_payoff);
  }
  SUBCASE("errors are recorded per cell") {
    const std::vector<double> cs{1.0};
    const std::vector<double> ls{0.5, 1.5};
    const auto rows = utility_sweep(base_config(), cs, ls, 1);
    CHECK(rows[0].error.empty());
    CHECK_FALSE(rows[1].error.empty());
  }
  SUBCASE("thread count does not matter") {
    const std::vector<double> cs{1.2, 2.0, 2.6};
    const std::vector<double> ls{0.001, 0.1};
    const auto a = utility_sweep(base_config(), cs, ls, 3, 1);
    const auto b = utility_sweep(base_config(), cs, ls, 3, 5);
    for (std::size_t k = 0; k < a.size(); ++k) {
      CHECK(a[k].avg_utility == b[k].avg_utility);
      CHECK(a[k].stderr_utility == b[k].stderr_utility);
    }
  }
}

TEST_CASE("crossover location") {
  const std::vector<double> c{0.0, 1.0, 2.0, 3.0};
  const std::vector<double> zero(4, 0.0);
  SUBCASE("linear crossing refined within a tenth of the step") {
    const std::vector<double> a{4.0, 3.0, 2.0, 1.0};
    const std::vector<double> b{2.0, 2.2, 2.4, 2.6};  // b - a = -2, -0.8, 0.4, 1.6: zero at 1 + 2/3
    const auto x = locate_crossover(c, a, zero, b, zero);
    REQUIRE(x.found);
    CHECK(x.grid_index == 2);
    CHECK(std::abs(x.c - (1.0 + 2.0 / 3.0)) <= 0.1);
  }
  SUBCASE("identical curves never cross") {
    const std::vector<double> a{4.0, 3.0, 2.0, 1.0};
    CHECK_FALSE(locate_crossover(c, a, zero, a, zero).found);
  }
  SUBCASE("confidence band") {
    const std::vector<double> a{4.0, 3.0, 2.0, 1.0};
    const std::vector<double> b{2.0, 2.9, 2.1, 2.6};
    const std::vector<double> se(4, 0.1);
    const auto x = locate_crossover(c, a, se, b, se);
    REQUIRE(x.found);
    CHECK(x.band_low == 1.0);
    CHECK(x.band_high == 2.0);
  }
  SUBCASE("length mismatch") {
    const std::vector<double> a{1.0};
    CHECK_THROWS_AS(locate_crossover(c, a, zero, zero, zero), LengthMismatch);
  }
}

TEST_CASE("transform comparison") {
  const std::vector<double> grid{0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5};
  SimConfig cfg = base_config(10000, 1000);
  SUBCASE("identical profiles never cross") {
    const auto rep = transform_comparison(cfg, case1_profile(), case1_profile(), grid, 0.001, 2);
    CHECK_FALSE(rep.perfect.found);
    CHECK_FALSE(rep.adaptive.found);
  }
  SUBCASE("both cases see the same trajectories") {
    const auto rep = transform_comparison(cfg, case1_profile(), case2_profile(), grid, 0.001, 2);
    REQUIRE(rep.rows.size() == grid.size());
    CHECK(rep.payoff_level == Approx(1.875));
    for (const auto& row : rep.rows) {
      CHECK(row.error.empty());
      CHECK(row.x_hash_case1 == row.x_hash_case2);
      // Payoffs are affine in the mean environment.
      CHECK(row.payoff_case1 == Approx(5.0 + 0.5 * row.mean_x).epsilon(1e-12));
      CHECK(row.payoff_case2 == Approx(5.75 + 0.1 * row.mean_x).epsilon(1e-12));
      CHECK((row.payoff_case2 > row.payoff_case1) == (row.mean_x < 1.875));
    }
    // The hash is the hash of the series a standalone run produces for case 2.
    SimConfig c2 = cfg;
    c2.eco.c = grid[3];
    c2.adapt.l = 0.001;
    c2.wellbeing = case2_profile();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::uint64_t s = 0; s < 2; ++s) h = (h ^ series_hash(run_trajectory(c2, s).xs)) * 0x100000001b3ULL;
    CHECK(rep.rows[3].x_hash_case2 == h);
    REQUIRE(rep.folds);
    CHECK(rep.folds->c_low == Approx(1.7872).epsilon(1e-3));
  }
}

TEST_CASE("rank test") {
  const std::vector<double> a{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  const std::vector<double> b{11, 12, 13, 14, 15, 16, 17, 18, 19, 20};
  const auto r = mann_whitney(a, b);
  CHECK(r.u == 0.0);
  // scipy.stats.mannwhitneyu(a, b, method="asymptotic").pvalue
  CHECK(r.p_value == Approx(0.00018267).epsilon(1e-3));
  CHECK(mann_whitney(a, a).p_value == Approx(1.0));
}
