#include "flicker/config.hpp"

#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "flicker/error.hpp"
#include "flicker/io.hpp"

namespace flicker {

namespace {

using Setter = std::function<void(std::string_view)>;
using Getter = std::function<std::string()>;

struct Field {
  std::string section;  // empty for top-level keys
  std::string key;
  Setter set;
  Getter get;

  std::string dotted() const { return section.empty() ? key : section + "." + key; }
};

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(std::string_view text, const std::string& field) {
  text = trim(text);
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size() || !std::isfinite(v))
    throw ValidationError(field, "expected a finite number, got '" + std::string(text) + "'");
  return v;
}

template <typename Int>
Int to_integer(std::string_view text, const std::string& field) {
  text = trim(text);
  Int v{};
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
    throw ValidationError(field, "expected an integer, got '" + std::string(text) + "'");
  return v;
}

std::optional<double> to_optional(std::string_view text, const std::string& field) {
  if (trim(text) == "auto") return std::nullopt;
  return to_double(text, field);
}

std::string from_optional(const std::optional<double>& v) {
  return v ? format_double(*v) : "auto";
}

CaseLabel to_label(std::string_view text, const std::string& field) {
  text = trim(text);
  if (text == "case1") return CaseLabel::Case1;
  if (text == "case2") return CaseLabel::Case2;
  if (text == "custom") return CaseLabel::Custom;
  throw ValidationError(field, "expected case1, case2 or custom, got '" + std::string(text) + "'");
}

// Selecting a named profile loads its parameters; m, n and a (applied after
// it) may then override them.
void apply_profile(CaseProfile& p, CaseLabel label) {
  p.label = label;
  if (label == CaseLabel::Case1) p.params = case1_profile().params;
  if (label == CaseLabel::Case2) p.params = case2_profile().params;
}

std::vector<Field> fields(StudyConfig& c) {
  std::vector<Field> f;
  auto num = [&](std::string section, std::string key, double& ref) {
    const std::string name = section + "." + key;
    f.push_back({section, key, [&ref, name](std::string_view v) { ref = to_double(v, name); },
                 [&ref] { return format_double(ref); }});
  };
  auto integer = [&](std::string section, std::string key, auto& ref) {
    using T = std::remove_reference_t<decltype(ref)>;
    const std::string name = section + "." + key;
    f.push_back({section, key, [&ref, name](std::string_view v) { ref = to_integer<T>(v, name); },
                 [&ref] { return std::to_string(ref); }});
  };
  auto optional = [&](std::string section, std::string key, std::optional<double>& ref) {
    const std::string name = section + "." + key;
    f.push_back({section, key, [&ref, name](std::string_view v) { ref = to_optional(v, name); },
                 [&ref] { return from_optional(ref); }});
  };
  auto profile = [&](std::string section, CaseProfile& ref) {
    const std::string name = section + ".profile";
    f.push_back({section, "profile",
                 [&ref, name](std::string_view v) { apply_profile(ref, to_label(v, name)); },
                 [&ref] { return std::string(to_string(ref.label)); }});
    num(section, "m", ref.params.m);
    num(section, "n", ref.params.n);
    num(section, "a", ref.params.a);
  };

  f.push_back({"", "preset", [&c](std::string_view v) { c.preset = std::string(trim(v)); },
               [&c] { return c.preset; }});
  num("eco", "r", c.sim.eco.r);
  num("eco", "K", c.sim.eco.K);
  num("eco", "c", c.sim.eco.c);
  num("eco", "h", c.sim.eco.h);
  num("noise", "T", c.sim.noise.T);
  num("noise", "beta", c.sim.noise.beta);
  num("noise", "mu", c.sim.noise.mu);
  num("adapt", "l", c.sim.adapt.l);
  profile("wellbeing", c.sim.wellbeing);
  integer("sim", "t_max", c.sim.t_max);
  integer("sim", "burn_in", c.sim.burn_in);
  optional("sim", "x0", c.sim.x0);
  optional("sim", "y0", c.sim.y0);
  num("sim", "i0", c.sim.i0);
  integer("sim", "seed", c.sim.seed);
  num("bifurcation", "c_min", c.bifurcation.c_min);
  num("bifurcation", "c_max", c.bifurcation.c_max);
  integer("bifurcation", "steps", c.bifurcation.steps);
  num("sweep", "c_min", c.sweep.c_min);
  num("sweep", "c_max", c.sweep.c_max);
  integer("sweep", "c_steps", c.sweep.c_steps);
  f.push_back({"sweep", "l_values",
               [&c](std::string_view v) {
                 c.sweep.l_values.clear();
                 std::size_t pos = 0;
                 while (pos <= v.size()) {
                   const auto comma = v.find(',', pos);
                   const auto item = v.substr(pos, comma == std::string_view::npos ? v.npos : comma - pos);
                   c.sweep.l_values.push_back(to_double(item, "sweep.l_values"));
                   if (comma == std::string_view::npos) break;
                   pos = comma + 1;
                 }
               },
               [&c] {
                 std::string s;
                 for (std::size_t k = 0; k < c.sweep.l_values.size(); ++k) {
                   if (k) s += ", ";
                   s += format_double(c.sweep.l_values[k]);
                 }
                 return s;
               }});
  integer("sweep", "seeds", c.sweep.n_seeds);
  profile("transform", c.transform.alternative);
  integer("flicker", "debounce", c.flicker.debounce);
  optional("flicker", "threshold", c.flicker.threshold);
  integer("flicker", "seeds", c.flicker.n_seeds);
  return f;
}

using Entries = std::vector<std::pair<std::string, std::string>>;  // dotted key -> raw value

StudyConfig apply(Entries entries) {
  StudyConfig cfg;
  auto table = fields(cfg);
  std::map<std::string, std::string> seen;
  for (auto& [key, value] : entries) {
    const bool known = std::any_of(table.begin(), table.end(), [&](const Field& f) { return f.dotted() == key; });
    if (!known) throw ValidationError(key, "unknown configuration key");
    if (!seen.emplace(key, value).second) throw ValidationError(key, "duplicate key");
  }
  for (auto& field : table)
    if (auto it = seen.find(field.dotted()); it != seen.end()) field.set(it->second);
  validate(cfg);
  return cfg;
}

StudyConfig base_fig4(double c) {
  StudyConfig s;
  s.sim.eco = {1.0, 10.0, c, 1.0};
  s.sim.noise = {30.0, 0.07, 0.0};
  s.sim.adapt.l = 0.01;
  s.sim.wellbeing = case1_profile();
  s.sim.t_max = 25000;
  s.sim.burn_in = 0;
  s.flicker.n_seeds = 20;
  return s;
}

}  // namespace

std::vector<double> SweepSpec::c_grid() const {
  if (c_steps == 1) return {c_min};
  std::vector<double> g(static_cast<std::size_t>(c_steps));
  const double step = (c_max - c_min) / (c_steps - 1);
  for (int k = 0; k < c_steps; ++k) g[static_cast<std::size_t>(k)] = c_min + step * k;
  g.back() = c_max;
  return g;
}

void validate(const StudyConfig& cfg) {
  validate(cfg.sim);
  const auto& b = cfg.bifurcation;
  if (!(b.c_min >= 0)) throw ValidationError("bifurcation.c_min", "must be >= 0");
  if (!(b.c_max > b.c_min)) throw ValidationError("bifurcation.c_max", "must exceed c_min");
  if (b.steps < 2) throw ValidationError("bifurcation.steps", "must be >= 2");
  const auto& s = cfg.sweep;
  if (!(s.c_min >= 0)) throw ValidationError("sweep.c_min", "must be >= 0");
  if (s.c_steps < 1) throw ValidationError("sweep.c_steps", "must be >= 1");
  if (s.c_steps > 1 && !(s.c_max > s.c_min)) throw ValidationError("sweep.c_max", "must exceed c_min");
  if (s.l_values.empty()) throw ValidationError("sweep.l_values", "must list at least one value");
  for (double l : s.l_values)
    if (!(l >= 0 && l <= 1)) throw ValidationError("sweep.l_values", "each value must lie in [0, 1]");
  if (s.n_seeds < 1) throw ValidationError("sweep.seeds", "must be >= 1");
  try {
    validate(cfg.transform.alternative.params, 2.0 * cfg.sim.eco.K);
  } catch (const ValidationError& e) {
    const std::string field = "transform." + e.field().substr(e.field().find('.') + 1);
    throw ValidationError(field, std::string(e.what()).substr(e.field().size() + 2));
  }
  const auto& fl = cfg.flicker;
  if (fl.debounce < 1) throw ValidationError("flicker.debounce", "must be >= 1");
  if (fl.threshold && !(*fl.threshold > 0)) throw ValidationError("flicker.threshold", "must be > 0");
  if (fl.n_seeds < 1) throw ValidationError("flicker.seeds", "must be >= 1");
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"fig2", "fig4a", "fig4b", "fig4c", "fig4d", "fig5", "fig6"};
  return names;
}

StudyConfig preset(std::string_view name) {
  StudyConfig s;
  if (name == "fig2") {
    s.sim.eco = {1.0, 10.0, 1.0, 1.0};
    s.bifurcation = {1.0, 3.5, 400};
  } else if (name == "fig4a") {
    s = base_fig4(1.0);
  } else if (name == "fig4b") {
    s = base_fig4(1.95);
  } else if (name == "fig4c") {
    s = base_fig4(2.45);
  } else if (name == "fig4d") {
    s = base_fig4(3.1);
  } else if (name == "fig5") {
    s.sim.eco = {1.0, 10.0, 1.0, 1.0};
    s.sim.noise = {30.0, 0.07, 0.0};
    s.sim.wellbeing = case1_profile();
    s.sweep = SweepSpec{};
  } else if (name == "fig6") {
    s.sim.eco = {1.0, 10.0, 1.0, 1.0};
    s.sim.noise = {30.0, 0.07, 0.0};
    s.sim.adapt.l = 0.001;
    s.sim.wellbeing = case1_profile();
    s.sweep = SweepSpec{};
    s.sweep.l_values = {0.001};
    s.transform.alternative = case2_profile();
  } else {
    throw ValidationError("preset", "unknown preset '" + std::string(name) + "'");
  }
  s.preset = std::string(name);
  validate(s);
  return s;
}

StudyConfig parse_config(std::string_view text) {
  Entries entries;
  std::string section;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find_first_of("#;"); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ParseError("line " + std::to_string(line_no) + ": unterminated section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ParseError("line " + std::to_string(line_no) + ": expected 'key = value'");
    const auto key = trim(line.substr(0, eq));
    if (key.empty()) throw ParseError("line " + std::to_string(line_no) + ": empty key");
    entries.emplace_back(section.empty() ? std::string(key) : section + "." + std::string(key),
                         std::string(trim(line.substr(eq + 1))));
  }
  return apply(std::move(entries));
}

StudyConfig parse_config_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("config JSON must be an object");

  auto scalar = [](const nlohmann::json& v, const std::string& key) -> std::string {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_null()) return "auto";
    if (v.is_number_float()) return format_double(v.get<double>());
    if (v.is_number()) return v.dump();
    if (v.is_array()) {
      std::string s;
      for (const auto& item : v) {
        if (!item.is_number()) throw ValidationError(key, "array items must be numbers");
        if (!s.empty()) s += ",";
        s += item.is_number_float() ? format_double(item.get<double>()) : item.dump();
      }
      return s;
    }
    throw ValidationError(key, "unsupported JSON value");
  };

  Entries entries;
  for (const auto& [name, value] : doc.items()) {
    if (value.is_object()) {
      for (const auto& [key, v] : value.items()) {
        const std::string dotted = name + "." + key;
        entries.emplace_back(dotted, scalar(v, dotted));
      }
    } else {
      entries.emplace_back(name, scalar(value, name));
    }
  }
  return apply(std::move(entries));
}

StudyConfig load_config(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  if (path.extension() == ".json") return parse_config_json(text);
  return parse_config(text);
}

StudyConfig load_config(std::string_view preset_or_path) {
  for (const auto& name : preset_names())
    if (name == preset_or_path) return preset(name);
  return load_config(std::filesystem::path(preset_or_path));
}

std::string write_config(const StudyConfig& cfg) {
  StudyConfig copy = cfg;
  std::ostringstream out;
  std::string section = "\x01";
  for (const auto& field : fields(copy)) {
    if (field.section != section) {
      section = field.section;
      if (!section.empty()) out << "\n[" << section << "]\n";
    }
    if (field.section.empty() && field.key == "preset" && copy.preset.empty()) continue;
    out << field.key << " = " << field.get() << "\n";
  }
  return out.str();
}

std::uint64_t config_fingerprint(const StudyConfig& cfg) { return fnv1a(write_config(cfg)); }

}  // namespace flicker
