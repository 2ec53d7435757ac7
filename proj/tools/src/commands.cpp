#include <chrono>
#include <ctime>

#include <nlohmann/json.hpp>

#include "flicker/analytics.hpp"
#include "flicker/cli.hpp"
#include "flicker/equilibria.hpp"
#include "flicker/error.hpp"
#include "flicker/io.hpp"
#include "flicker/parallel.hpp"
#include "flicker/stats.hpp"

namespace flicker::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string manifest_name(const std::string& subcommand) { return subcommand + ".manifest.json"; }

json optional_regime(const std::optional<Regime>& r) {
  return r ? json(to_string(*r)) : json(nullptr);
}

// Collects output paths and writes the manifest last so it can list them.
class Run {
 public:
  Run(std::string subcommand, const StudyConfig& cfg, const RunOptions& options)
      : subcommand_(std::move(subcommand)), cfg_(cfg), options_(options) {
    fs::create_directories(options_.out_dir);
  }

  std::string manifest_ref() const {
    return manifest_name(subcommand_) + " config_fingerprint=" + hex64(config_fingerprint(cfg_));
  }

  void write(const std::string& file, std::string_view content) {
    const fs::path path = options_.out_dir / file;
    atomic_write(path, content);
    outputs_.push_back(path);
  }

  void warn(std::string message) { warnings_.push_back(std::move(message)); }
  json& summary() { return summary_; }

  std::vector<fs::path> finish() {
    json outputs = json::array();
    for (const auto& p : outputs_) outputs.push_back(p.filename().string());
    json manifest{
        {"tool", "flicker"},
        {"version", FLICKER_VERSION},
        {"subcommand", subcommand_},
        {"command_line", options_.command_line},
        {"preset", cfg_.preset},
        {"seed", cfg_.sim.seed},
        {"config_fingerprint", hex64(config_fingerprint(cfg_))},
        {"sim_fingerprint", hex64(fingerprint(cfg_.sim))},
        {"created_utc", utc_now()},
        {"config", write_config(cfg_)},
        {"outputs", outputs},
        {"warnings", warnings_},
        {"summary", summary_},
    };
    const fs::path path = options_.out_dir / manifest_name(subcommand_);
    atomic_write(path, manifest.dump(2) + "\n");
    outputs_.push_back(path);
    return outputs_;
  }

 private:
  std::string subcommand_;
  const StudyConfig& cfg_;
  const RunOptions& options_;
  std::vector<fs::path> outputs_;
  std::vector<std::string> warnings_;
  json summary_ = json::object();
};

}  // namespace

std::vector<fs::path> simulate(const StudyConfig& cfg, const RunOptions& options) {
  Run run("simulate", cfg, options);
  const Trajectory tr = run_trajectory(cfg.sim);
  const auto& w = cfg.sim.wellbeing.params;

  CsvWriter csv(run.manifest_ref(), {"t", "x", "y", "i", "payoff", "utility"});
  for (std::size_t k = 0; k < tr.size(); ++k) {
    csv.cell(tr.t0 + static_cast<std::int64_t>(k))
        .cell(tr.xs[k])
        .cell(tr.ys[k])
        .cell(tr.is[k])
        .cell(payoff(tr.xs[k], w))
        .cell(utility(tr.xs[k], tr.ys[k], w));
    csv.end_row();
  }
  run.write("trajectory.csv", csv.str());
  run.summary() = {{"avg_payoff", average_payoff(tr.xs, w)},
                   {"avg_utility", average_utility(tr.xs, tr.ys, w)},
                   {"samples", tr.size()},
                   {"regime", to_string(classify_regime(cfg.sim.eco))}};
  return run.finish();
}

std::vector<fs::path> bifurcation(const StudyConfig& cfg, const RunOptions& options) {
  Run run("bifurcation", cfg, options);
  const auto& b = cfg.bifurcation;
  const auto rows = bifurcation_scan(cfg.sim.eco, b.c_min, b.c_max, b.steps,
                                     resolve_threads(options.threads));

  CsvWriter csv(run.manifest_ref(), {"c", "x_star", "stable", "multiplier", "trivial", "regime"});
  for (const auto& row : rows) {
    if (!row.error.empty()) {
      run.warn("c=" + format_double(row.c) + ": " + row.error);
      continue;
    }
    for (const auto& e : row.equilibria) {
      csv.cell(row.c)
          .cell(e.x_star)
          .cell(std::int64_t{e.stable})
          .cell(e.multiplier)
          .cell(std::int64_t{e.trivial()})
          .cell(row.regime ? to_string(*row.regime) : "");
      csv.end_row();
    }
  }
  run.write("bifurcation.csv", csv.str());

  try {
    const FoldPoints f = fold_points(cfg.sim.eco, b.c_min, b.c_max, 1e-8, b.steps);
    run.summary() = {{"c_low", f.c_low}, {"c_high", f.c_high}};
  } catch (const Error& e) {
    run.warn(std::string("fold points: ") + e.kind() + ": " + e.what());
  }
  return run.finish();
}

std::vector<fs::path> sweep(const StudyConfig& cfg, const RunOptions& options) {
  Run run("sweep", cfg, options);
  const auto grid = cfg.sweep.c_grid();
  const auto rows = utility_sweep(cfg.sim, grid, cfg.sweep.l_values, cfg.sweep.n_seeds,
                                  resolve_threads(options.threads));

  CsvWriter csv(run.manifest_ref(), {"c", "l", "regime", "avg_payoff", "avg_utility",
                                     "stderr_payoff", "stderr_utility"});
  for (const auto& row : rows) {
    if (!row.error.empty())
      run.warn("c=" + format_double(row.c) + " l=" + format_double(row.l) + ": " + row.error);
    csv.cell(row.c)
        .cell(row.l)
        .cell(row.regime ? to_string(*row.regime) : "")
        .cell(row.avg_payoff)
        .cell(row.avg_utility)
        .cell(row.stderr_payoff)
        .cell(row.stderr_utility);
    csv.end_row();
  }
  run.write("sweep.csv", csv.str());
  run.summary() = {{"rows", rows.size()}, {"seeds", cfg.sweep.n_seeds}};
  return run.finish();
}

std::vector<fs::path> transform(const StudyConfig& cfg, const RunOptions& options) {
  Run run("transform", cfg, options);
  const auto grid = cfg.sweep.c_grid();
  const CrossoverReport rep =
      transform_comparison(cfg.sim, cfg.sim.wellbeing, cfg.transform.alternative, grid,
                           cfg.sim.adapt.l, cfg.sweep.n_seeds, resolve_threads(options.threads));

  CsvWriter csv(run.manifest_ref(),
                {"c", "regime", "mean_x", "payoff_case1", "payoff_case1_se", "payoff_case2",
                 "payoff_case2_se", "utility_case1", "utility_case1_se", "utility_case2",
                 "utility_case2_se", "x_hash_case1", "x_hash_case2"});
  for (const auto& r : rep.rows) {
    if (!r.error.empty()) run.warn("c=" + format_double(r.c) + ": " + r.error);
    csv.cell(r.c)
        .cell(r.regime ? to_string(*r.regime) : "")
        .cell(r.mean_x)
        .cell(r.payoff_case1)
        .cell(r.payoff_case1_se)
        .cell(r.payoff_case2)
        .cell(r.payoff_case2_se)
        .cell(r.utility_case1)
        .cell(r.utility_case1_se)
        .cell(r.utility_case2)
        .cell(r.utility_case2_se)
        .cell(hex64(r.x_hash_case1))
        .cell(hex64(r.x_hash_case2));
    csv.end_row();
  }
  run.write("transform.csv", csv.str());

  auto crossing = [](const Crossover& c) {
    if (!c.found) return json{{"found", false}, {"flag", "NoCrossover"}};
    return json{{"found", true},
                {"c", c.c},
                {"grid_index", c.grid_index},
                {"regime", optional_regime(c.regime)},
                {"band", {c.band_low, c.band_high}}};
  };
  json doc{{"manifest", manifest_name("transform")},
           {"config_fingerprint", hex64(config_fingerprint(cfg))},
           {"l", cfg.sim.adapt.l},
           {"seeds", cfg.sweep.n_seeds},
           {"payoff_crossover_level", rep.payoff_level},
           {"c_cross_perfect", crossing(rep.perfect)},
           {"c_cross_adaptive", crossing(rep.adaptive)}};
  if (rep.folds)
    doc["folds"] = {{"c_low", rep.folds->c_low}, {"c_high", rep.folds->c_high}};
  else
    doc["folds"] = nullptr;
  run.write("crossover.json", doc.dump(2) + "\n");
  run.summary() = {{"c_cross_perfect", doc["c_cross_perfect"]},
                   {"c_cross_adaptive", doc["c_cross_adaptive"]}};
  return run.finish();
}

std::vector<fs::path> flicker(const StudyConfig& cfg, const RunOptions& options) {
  Run run("flicker", cfg, options);
  double threshold = 0.0;
  if (cfg.flicker.threshold) {
    threshold = *cfg.flicker.threshold;
  } else if (const auto s = separatrix(cfg.sim.eco)) {
    threshold = *s;
  } else {
    throw PreconditionError(
        "no interior unstable equilibrium at this extraction rate; pass --threshold");
  }

  const auto n = static_cast<std::size_t>(cfg.flicker.n_seeds);
  std::vector<FlickerStats> stats(n);
  parallel_for(n, resolve_threads(options.threads), [&](std::size_t k) {
    stats[k] = flicker_stats(run_trajectory(cfg.sim, k), threshold, cfg.flicker.debounce);
  });

  json reps = json::array();
  std::vector<double> transitions, fractions;
  for (std::size_t k = 0; k < n; ++k) {
    const auto& s = stats[k];
    reps.push_back({{"replicate", k},
                    {"n_transitions", s.n_transitions},
                    {"fraction_high", s.fraction_high},
                    {"residence_high", s.residence_high},
                    {"residence_low", s.residence_low}});
    transitions.push_back(s.n_transitions);
    fractions.push_back(s.fraction_high);
  }
  json doc{{"manifest", manifest_name("flicker")},
           {"config_fingerprint", hex64(config_fingerprint(cfg))},
           {"c", cfg.sim.eco.c},
           {"threshold", threshold},
           {"threshold_source", cfg.flicker.threshold ? "user" : "separatrix"},
           {"debounce", cfg.flicker.debounce},
           {"length", stats.front().length},
           {"median_transitions", median(transitions)},
           {"mean_fraction_high", mean(fractions)},
           {"replicates", reps}};
  run.write("flicker.json", doc.dump(2) + "\n");
  run.summary() = {{"median_transitions", doc["median_transitions"]},
                   {"mean_fraction_high", doc["mean_fraction_high"]}};
  return run.finish();
}

}  // namespace flicker::cli
