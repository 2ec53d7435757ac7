#include "flicker/simulation.hpp"

#include <bit>
#include <cmath>
#include <string_view>

#include "flicker/equilibria.hpp"
#include "flicker/error.hpp"
#include "flicker/io.hpp"
#include "flicker/parallel.hpp"
#include "flicker/random.hpp"
#include "flicker/stats.hpp"

namespace flicker {

namespace {

class Hasher {
 public:
  void add(std::uint64_t v) {
    for (int b = 0; b < 8; ++b) {
      h_ ^= (v >> (8 * b)) & 0xff;
      h_ *= 0x100000001b3ULL;
    }
  }
  void add(double v) { add(std::bit_cast<std::uint64_t>(v)); }
  void add(std::int64_t v) { add(static_cast<std::uint64_t>(v)); }
  void add(const std::optional<double>& v) {
    add(static_cast<std::uint64_t>(v.has_value()));
    add(v.value_or(0.0));
  }
  std::uint64_t value() const { return h_; }

 private:
  std::uint64_t h_ = 0xcbf29ce484222325ULL;
};

}  // namespace

std::uint64_t fingerprint(const SimConfig& cfg) {
  Hasher h;
  h.add(cfg.eco.r);
  h.add(cfg.eco.K);
  h.add(cfg.eco.c);
  h.add(cfg.eco.h);
  h.add(cfg.noise.T);
  h.add(cfg.noise.beta);
  h.add(cfg.noise.mu);
  h.add(cfg.adapt.l);
  h.add(static_cast<std::uint64_t>(cfg.wellbeing.label));
  h.add(cfg.wellbeing.params.m);
  h.add(cfg.wellbeing.params.n);
  h.add(cfg.wellbeing.params.a);
  h.add(cfg.t_max);
  h.add(cfg.burn_in);
  h.add(cfg.x0);
  h.add(cfg.y0);
  h.add(cfg.i0);
  h.add(cfg.seed);
  return h.value();
}

void validate(const SimConfig& cfg) {
  validate(cfg.eco);
  validate(cfg.noise);
  validate(cfg.adapt);
  validate(cfg.wellbeing.params, 2.0 * cfg.eco.K);
  if (cfg.burn_in < 0) throw ValidationError("sim.burn_in", "must be >= 0");
  if (cfg.t_max <= cfg.burn_in) throw ValidationError("sim.t_max", "must exceed sim.burn_in");
  if (cfg.x0 && !(std::isfinite(*cfg.x0) && *cfg.x0 >= 0))
    throw ValidationError("sim.x0", "must be finite and >= 0");
  if (cfg.y0 && !(std::isfinite(*cfg.y0) && *cfg.y0 >= 0))
    throw ValidationError("sim.y0", "must be finite and >= 0");
  if (!std::isfinite(cfg.i0)) throw ValidationError("sim.i0", "must be finite");
}

SystemState initial_state(const SimConfig& cfg) {
  SystemState s;
  if (cfg.x0) {
    s.x = *cfg.x0;
  } else {
    const auto x = upper_stable_equilibrium(cfg.eco);
    if (!x) throw ValidationError("sim.x0", "auto start needs a stable positive equilibrium");
    s.x = *x;
  }
  s.y = cfg.y0.value_or(s.x);
  s.i = cfg.i0;
  return s;
}

Trajectory run_trajectory(const SimConfig& cfg, std::uint64_t replicate) {
  validate(cfg);
  SystemState s = initial_state(cfg);

  Trajectory tr;
  tr.t0 = cfg.burn_in;
  tr.config_fingerprint = fingerprint(cfg);
  const auto n = static_cast<std::size_t>(cfg.t_max - cfg.burn_in);
  tr.xs.reserve(n);
  tr.ys.reserve(n);
  tr.is.reserve(n);

  NormalSequence innovations(cfg.seed, replicate);
  for (std::int64_t t = 0; t < cfg.t_max; ++t) {
    if (t >= cfg.burn_in) {
      tr.xs.push_back(s.x);
      tr.ys.push_back(s.y);
      tr.is.push_back(s.i);
    }
    if (t + 1 == cfg.t_max) break;
    const double eta = innovations.next(cfg.noise.mu, cfg.noise.beta);
    s = step_coupled(s, cfg.eco, cfg.noise, cfg.adapt, eta);
  }
  return tr;
}

EnsembleSummary summarize(std::vector<ReplicateResult> replicates) {
  EnsembleSummary out;
  out.replicates = std::move(replicates);
  if (out.replicates.empty()) return out;
  std::vector<double> pay, util;
  for (const auto& r : out.replicates) {
    pay.push_back(r.avg_payoff);
    util.push_back(r.avg_utility);
  }
  out.mean_payoff = mean(pay);
  out.stderr_payoff = standard_error(pay);
  out.mean_utility = mean(util);
  out.stderr_utility = standard_error(util);
  return out;
}

EnsembleSummary run_ensemble(const SimConfig& cfg, int n_seeds, unsigned threads) {
  if (n_seeds < 1) throw InvalidConfig("n_seeds: must be >= 1");
  validate(cfg);
  std::vector<ReplicateResult> results(static_cast<std::size_t>(n_seeds));
  parallel_for(results.size(), resolve_threads(threads), [&](std::size_t k) {
    const Trajectory tr = run_trajectory(cfg, k);
    results[k] = {k, average_payoff(tr.xs, cfg.wellbeing.params),
                  average_utility(tr.xs, tr.ys, cfg.wellbeing.params)};
  });
  return summarize(std::move(results));
}

std::uint64_t series_hash(const std::vector<double>& v) {
  return fnv1a(std::string_view(reinterpret_cast<const char*>(v.data()), v.size() * sizeof(double)));
}

}  // namespace flicker
