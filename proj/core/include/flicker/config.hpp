#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "flicker/simulation.hpp"

namespace flicker {

struct BifurcationSpec {
  double c_min = 0.0;
  double c_max = 4.0;
  int steps = 400;

  friend bool operator==(const BifurcationSpec&, const BifurcationSpec&) = default;
};

// Extraction-rate grid and replicate count shared by `sweep` and `transform`.
struct SweepSpec {
  double c_min = 0.25;
  double c_max = 3.5;
  int c_steps = 40;
  std::vector<double> l_values{0.001, 0.01, 0.1};
  int n_seeds = 10;

  std::vector<double> c_grid() const;

  friend bool operator==(const SweepSpec&, const SweepSpec&) = default;
};

// The transformed (generalist) profile; the status quo is sim.wellbeing.
struct TransformSpec {
  CaseProfile alternative = case2_profile();

  friend bool operator==(const TransformSpec&, const TransformSpec&) = default;
};

struct FlickerSpec {
  int debounce = 5;
  std::optional<double> threshold;  // unset: interior unstable equilibrium
  int n_seeds = 1;

  friend bool operator==(const FlickerSpec&, const FlickerSpec&) = default;
};

struct StudyConfig {
  std::string preset;  // empty for hand-written configs
  SimConfig sim;
  BifurcationSpec bifurcation;
  SweepSpec sweep;
  TransformSpec transform;
  FlickerSpec flicker;

  friend bool operator==(const StudyConfig&, const StudyConfig&) = default;
};

// Throws ValidationError naming the first offending field.
void validate(const StudyConfig& cfg);

const std::vector<std::string>& preset_names();

// Named parameter sets: fig2, fig4a-d, fig5, fig6.
// Throws ValidationError on an unknown name.
StudyConfig preset(std::string_view name);

// INI-style text:
//
//   preset = fig4b          # optional, informational
//   [eco]        r K c h
//   [noise]      T beta mu
//   [adapt]      l
//   [wellbeing]  profile (case1|case2|custom) m n a
//   [sim]        t_max burn_in x0 y0 (number or "auto") i0 seed
//   [bifurcation] c_min c_max steps
//   [sweep]      c_min c_max c_steps l_values (comma list) seeds
//   [transform]  profile m n a
//   [flicker]    debounce threshold (number or "auto") seeds
//
// '#' and ';' start comments. Missing keys keep their defaults; unknown
// sections or keys are rejected. Throws ParseError or ValidationError.
StudyConfig parse_config(std::string_view text);

// Same schema as a JSON object of sections.
StudyConfig parse_config_json(std::string_view text);

// Dispatches on extension: ".json" parses JSON, anything else INI text.
StudyConfig load_config(const std::filesystem::path& path);

// Either a preset name or a path to a config file.
StudyConfig load_config(std::string_view preset_or_path);

// Canonical INI text; every value is written, floats with 17 significant
// digits, so parse_config(write_config(c)) == c.
std::string write_config(const StudyConfig& cfg);

// FNV-1a of the canonical text.
std::uint64_t config_fingerprint(const StudyConfig& cfg);

}  // namespace flicker
