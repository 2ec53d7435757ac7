#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "flicker/equilibria.hpp"
#include "flicker/simulation.hpp"
#include "flicker/wellbeing.hpp"

namespace flicker {

enum class Basin { Low, High };

// Ties go to the high basin.
Basin classify_basin(double x, double separatrix);

struct FlickerStats {
  int n_transitions = 0;
  std::vector<std::int64_t> residence_high;  // dwell times, in order of occurrence
  std::vector<std::int64_t> residence_low;
  double fraction_high = 0.0;
  std::int64_t length = 0;
};

inline constexpr int kDefaultDebounce = 5;

// Labels each sample by basin, then debounces: the current basin only
// switches when the other basin's run lasts at least `debounce` samples;
// shorter excursions are credited to the current basin. Dwell times are the
// maximal runs of the debounced labels, so they sum to the series length.
// debounce = 1 counts every raw crossing. Throws EmptyTrajectory.
FlickerStats flicker_stats(std::span<const double> xs, double separatrix,
                           int debounce = kDefaultDebounce);

inline FlickerStats flicker_stats(const Trajectory& tr, double separatrix,
                                  int debounce = kDefaultDebounce) {
  return flicker_stats(tr.xs, separatrix, debounce);
}

struct SweepRow {
  double c = 0.0;
  double l = 0.0;
  std::optional<Regime> regime;
  double avg_payoff = 0.0;
  double stderr_payoff = 0.0;
  double avg_utility = 0.0;
  double stderr_utility = 0.0;
  std::string error;  // nonempty when the cell failed
};

// One ensemble per (l, c) cell; rows ordered by l (outer) then c. Every cell
// uses replicates 0..n_seeds-1 of base.seed, so cells with the same c share
// their innovation streams across l values.
std::vector<SweepRow> utility_sweep(const SimConfig& base, std::span<const double> c_grid,
                                    std::span<const double> l_values, int n_seeds,
                                    unsigned threads = 1);

struct TransformRow {
  double c = 0.0;
  std::optional<Regime> regime;
  double mean_x = 0.0;
  double payoff_case1 = 0.0, payoff_case1_se = 0.0;
  double payoff_case2 = 0.0, payoff_case2_se = 0.0;
  double utility_case1 = 0.0, utility_case1_se = 0.0;
  double utility_case2 = 0.0, utility_case2_se = 0.0;
  // Combined hash of the x series each case was evaluated on.
  std::uint64_t x_hash_case1 = 0;
  std::uint64_t x_hash_case2 = 0;
  std::string error;
};

struct Crossover {
  bool found = false;
  double c = 0.0;                  // refined crossing
  std::size_t grid_index = 0;      // first grid cell where case 2 is ahead
  std::optional<Regime> regime;    // regime at the refined c
  double band_low = 0.0;           // c-interval where the confidence bands overlap
  double band_high = 0.0;
};

struct CrossoverReport {
  Crossover perfect;   // average payoff, perfect adaptation
  Crossover adaptive;  // average utility, simulated adaptation
  double payoff_level = 0.0;  // environment level where the two payoffs tie
  std::optional<FoldPoints> folds;
  std::vector<TransformRow> rows;
};

inline constexpr double kBandZ = 1.96;

// First grid crossing where `b` rises above `a`, refined by bisection on the
// linear interpolant to a bracket of step/10. Not found when b never leads.
Crossover locate_crossover(std::span<const double> c_grid, std::span<const double> a,
                           std::span<const double> a_se, std::span<const double> b,
                           std::span<const double> b_se);

// Both profiles are evaluated on the same trajectories (one set of
// replicates per c); only the wellbeing parameters differ between them.
CrossoverReport transform_comparison(const SimConfig& base, const CaseProfile& case1,
                                     const CaseProfile& case2, std::span<const double> c_grid,
                                     double l, int n_seeds, unsigned threads = 1);

}  // namespace flicker
