#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "flicker/dynamics.hpp"
#include "flicker/wellbeing.hpp"

namespace flicker {

inline constexpr std::uint64_t kDefaultSeed = 1234567;

struct SimConfig {
  EcoParams eco;
  NoiseParams noise;
  AdaptationParams adapt;
  CaseProfile wellbeing = case1_profile();
  std::int64_t t_max = 50000;
  std::int64_t burn_in = 5000;
  // Unset initial conditions resolve to the largest stable positive
  // equilibrium at eco.c (x0), and to x0 (y0).
  std::optional<double> x0;
  std::optional<double> y0;
  double i0 = 0.0;
  std::uint64_t seed = kDefaultSeed;

  friend bool operator==(const SimConfig&, const SimConfig&) = default;
};

// Throws InvalidConfig (ValidationError) naming the offending field.
void validate(const SimConfig& cfg);

// FNV-1a over every field's bit pattern in declaration order. Any change to
// any value (including unset vs. set initial conditions) changes the hash.
std::uint64_t fingerprint(const SimConfig& cfg);

// Initial state with unset x0/y0 resolved.
SystemState initial_state(const SimConfig& cfg);

// States at t = t0, ..., t_max - 1 where t0 = burn_in.
struct Trajectory {
  std::int64_t t0 = 0;
  std::vector<double> xs;
  std::vector<double> ys;
  std::vector<double> is;
  std::uint64_t config_fingerprint = 0;

  std::size_t size() const { return xs.size(); }
};

// Iterates the coupled map from the initial state, drawing innovations from
// the (cfg.seed, replicate) substream. Bit-identical for identical inputs.
Trajectory run_trajectory(const SimConfig& cfg, std::uint64_t replicate = 0);

struct ReplicateResult {
  std::uint64_t replicate = 0;
  double avg_payoff = 0.0;
  double avg_utility = 0.0;
};

struct EnsembleSummary {
  std::vector<ReplicateResult> replicates;  // in replicate order
  double mean_payoff = 0.0;
  double stderr_payoff = 0.0;
  double mean_utility = 0.0;
  double stderr_utility = 0.0;
};

// Aggregates per-replicate averages from results in replicate order.
EnsembleSummary summarize(std::vector<ReplicateResult> replicates);

// Runs replicates 0..n_seeds-1 on up to `threads` workers (0 = all cores).
// The summary does not depend on the thread count.
EnsembleSummary run_ensemble(const SimConfig& cfg, int n_seeds, unsigned threads = 1);

// Hash of the x series, used to confirm two evaluations shared a trajectory.
std::uint64_t series_hash(const std::vector<double>& v);

}  // namespace flicker
