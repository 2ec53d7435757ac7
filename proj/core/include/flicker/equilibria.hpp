#pragma once

#include <optional>
#include <string>
#include <vector>

#include "flicker/dynamics.hpp"

namespace flicker {

struct Equilibrium {
  double x_star = 0.0;
  bool stable = false;
  double multiplier = 0.0;  // f'(x_star) of the noise-free environment map

  bool trivial() const { return x_star == 0.0; }
};

enum class Regime { Regime1 = 1, Regime2 = 2, Regime3 = 3 };

const char* to_string(Regime r);

struct FoldPoints {
  double c_low = 0.0;   // bistability begins
  double c_high = 0.0;  // high branch vanishes
};

// Derivative of the noise-free environment map at x.
double map_multiplier(double x, const EcoParams& p);

// All nonnegative fixed points of the noise-free map, ascending. x = 0 is
// always first and is flagged trivial. Positive roots solve
// r (1 - x/K)(x^2 + h^2) = c x, found by bisection on monotone pieces of the
// cubic over [0, 2K]. Throws RootFindingError if a bracket cannot be formed.
std::vector<Equilibrium> equilibria(const EcoParams& p);

// Regime from the stable positive equilibria: one on the high branch,
// two (bistable), or one on the low branch. A lone stable root is "high" when
// it lies above the cubic's inflection point K/3, where the two folds meet.
Regime classify_regime(const EcoParams& p);

struct BifurcationRow {
  double c = 0.0;
  std::vector<Equilibrium> equilibria;
  std::optional<Regime> regime;
  std::string error;  // nonempty when root finding failed at this c
};

// Uniform grid of n_steps points over [c_min, c_max], inclusive.
std::vector<double> uniform_grid(double lo, double hi, int n_steps);

// Equilibria along the grid. Failing grid points are recorded, not thrown.
// Rows are always in grid order regardless of `threads`.
std::vector<BifurcationRow> bifurcation_scan(const EcoParams& base, double c_min,
                                             double c_max, int n_steps,
                                             unsigned threads = 1);

// Edges of the bistable band, located by bisection on the stable positive
// root count to within `tol`. `n_steps` sets the coarse detection grid.
// Throws NoBistability when the grid never sees two stable positive roots.
FoldPoints fold_points(const EcoParams& base, double c_min, double c_max,
                       double tol = 1e-6, int n_steps = 400);

// Interior unstable equilibrium separating the two basins, if any.
std::optional<double> separatrix(const EcoParams& p);

// Largest stable positive equilibrium, the default starting state.
std::optional<double> upper_stable_equilibrium(const EcoParams& p);

}  // namespace flicker
