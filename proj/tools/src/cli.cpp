#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "flicker/cli.hpp"
#include "flicker/error.hpp"
#include "flicker/io.hpp"

namespace flicker::cli {

namespace {

struct Overrides {
  std::string preset;
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> seeds;
  std::optional<std::int64_t> t_max;
  std::optional<std::int64_t> burn_in;
  std::optional<double> c_min, c_max;
  std::optional<int> steps;
  std::optional<double> l;
  std::optional<double> c;
  std::optional<int> debounce;
  std::optional<double> threshold;
  std::string out_dir;
  unsigned threads = 0;
};

using Command = std::vector<std::filesystem::path> (*)(const StudyConfig&, const RunOptions&);

void add_common(CLI::App* sub, Overrides& o) {
  auto* preset = sub->add_option("--preset", o.preset, "Named preset: fig2 fig4a fig4b fig4c fig4d fig5 fig6");
  auto* config = sub->add_option("--config", o.config, "Config file (INI text or .json)");
  preset->excludes(config);
  sub->add_option("--seed", o.seed, "Master seed");
  sub->add_option("--t-max", o.t_max, "Horizon in steps");
  sub->add_option("--burn-in", o.burn_in, "Discarded prefix in steps");
  sub->add_option("--c", o.c, "Extraction rate");
  sub->add_option("--l", o.l, "Adaptation rate");
  sub->add_option("--out-dir", o.out_dir, std::string("Output directory (default $") + kOutDirEnv + " or ./out)");
  sub->add_option("--threads", o.threads, "Worker threads (0 = all cores)");
}

void add_grid(CLI::App* sub, Overrides& o) {
  sub->add_option("--c-min", o.c_min, "Lowest extraction rate of the grid");
  sub->add_option("--c-max", o.c_max, "Highest extraction rate of the grid");
  sub->add_option("--steps", o.steps, "Number of grid points");
}

StudyConfig resolve(const std::string& name, const Overrides& o) {
  StudyConfig cfg;
  if (!o.preset.empty()) {
    cfg = preset(o.preset);
  } else if (!o.config.empty()) {
    cfg = load_config(std::filesystem::path(o.config));
  }
  if (o.seed) cfg.sim.seed = *o.seed;
  if (o.t_max) cfg.sim.t_max = *o.t_max;
  if (o.burn_in) cfg.sim.burn_in = *o.burn_in;
  if (o.c) cfg.sim.eco.c = *o.c;
  if (o.l) {
    cfg.sim.adapt.l = *o.l;
    if (name == "sweep") cfg.sweep.l_values = {*o.l};
  }
  if (o.seeds) {
    cfg.sweep.n_seeds = *o.seeds;
    cfg.flicker.n_seeds = *o.seeds;
  }
  if (name == "bifurcation") {
    if (o.c_min) cfg.bifurcation.c_min = *o.c_min;
    if (o.c_max) cfg.bifurcation.c_max = *o.c_max;
    if (o.steps) cfg.bifurcation.steps = *o.steps;
  } else {
    if (o.c_min) cfg.sweep.c_min = *o.c_min;
    if (o.c_max) cfg.sweep.c_max = *o.c_max;
    if (o.steps) cfg.sweep.c_steps = *o.steps;
  }
  if (o.debounce) cfg.flicker.debounce = *o.debounce;
  if (o.threshold) cfg.flicker.threshold = *o.threshold;
  validate(cfg);
  return cfg;
}

void report_error(std::ostream& err, const std::string& kind, const std::string& message,
                  const std::string& field = {}) {
  nlohmann::json e{{"error", kind}, {"message", message}};
  if (!field.empty()) e["field"] = field;
  err << e.dump() << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Coupled ecosystem / adaptation simulator: regimes, flickering and wellbeing"};
  app.name("flicker");
  app.require_subcommand(1);
  Overrides o;

  const std::map<std::string, std::pair<Command, std::string>> commands{
      {"simulate", {&simulate, "Simulate one trajectory (trajectory.csv)"}},
      {"bifurcation", {&bifurcation, "Equilibria across extraction rates (bifurcation.csv)"}},
      {"sweep", {&sweep, "Average payoff and utility over c and l (sweep.csv)"}},
      {"transform", {&transform, "Specialist vs generalist comparison (transform.csv, crossover.json)"}},
      {"flicker", {&flicker, "Basin-switching statistics (flicker.json)"}},
  };
  for (const auto& [name, entry] : commands) {
    auto* sub = app.add_subcommand(name, entry.second);
    add_common(sub, o);
    if (name != "simulate") add_grid(sub, o);
    if (name == "sweep" || name == "transform" || name == "flicker")
      sub->add_option("--seeds", o.seeds, "Number of replicates");
    if (name == "flicker") {
      sub->add_option("--debounce", o.debounce, "Minimum run length for a basin switch");
      sub->add_option("--threshold", o.threshold, "Basin threshold (default: separatrix)");
    }
  }

  std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    std::ostringstream msg_out, msg_err;
    const int code = app.exit(e, msg_out, msg_err);
    out << msg_out.str();
    if (code != 0) report_error(err, "UsageError", e.what());
    return code;
  }

  const auto* chosen = app.get_subcommands().front();
  const std::string name = chosen->get_name();
  try {
    const StudyConfig cfg = resolve(name, o);
    RunOptions options;
    if (!o.out_dir.empty()) {
      options.out_dir = o.out_dir;
    } else if (const char* env = std::getenv(kOutDirEnv); env && *env) {
      options.out_dir = env;
    }
    options.threads = o.threads;
    for (std::size_t k = 0; k < args.size(); ++k) options.command_line += (k ? " " : "") + args[k];

    const auto written = commands.at(name).first(cfg, options);
    for (const auto& p : written) out << p.string() << "\n";
    return 0;
  } catch (const ValidationError& e) {
    report_error(err, e.kind(), e.what(), e.field());
  } catch (const Error& e) {
    report_error(err, e.kind(), e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    report_error(err, "IoError", e.what());
  } catch (const std::exception& e) {
    report_error(err, "InternalError", e.what());
  }
  return 2;
}

}  // namespace flicker::cli
