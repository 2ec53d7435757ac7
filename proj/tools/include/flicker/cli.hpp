#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "flicker/config.hpp"

namespace flicker::cli {

inline constexpr const char* kOutDirEnv = "FLICKER_OUT_DIR";

struct RunOptions {
  std::filesystem::path out_dir = "out";
  unsigned threads = 0;  // 0: hardware concurrency
  std::string command_line;
};

// Each subcommand writes its outputs plus `<subcommand>.manifest.json` into
// options.out_dir and returns every path written (manifest last).
std::vector<std::filesystem::path> simulate(const StudyConfig& cfg, const RunOptions& options);
std::vector<std::filesystem::path> bifurcation(const StudyConfig& cfg, const RunOptions& options);
std::vector<std::filesystem::path> sweep(const StudyConfig& cfg, const RunOptions& options);
std::vector<std::filesystem::path> transform(const StudyConfig& cfg, const RunOptions& options);
std::vector<std::filesystem::path> flicker(const StudyConfig& cfg, const RunOptions& options);

// Parses argv-style arguments (args[0] is the program name), runs the
// subcommand and returns the process exit status. Failures print a one-line
// JSON error object to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace flicker::cli
