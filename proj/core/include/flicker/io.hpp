#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace flicker {

// 17 significant digits, C locale; "nan"/"inf"/"-inf" for non-finite values.
std::string format_double(double v);

std::string hex64(std::uint64_t v);

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h = 0xcbf29ce484222325ULL);

// Minimal CSV builder. The first line is a '#' comment pointing at the
// manifest, then the header row, then data rows.
class CsvWriter {
 public:
  CsvWriter(std::string manifest_ref, std::vector<std::string> header);

  CsvWriter& cell(double v);
  CsvWriter& cell(std::int64_t v);
  CsvWriter& cell(std::string_view v);
  void end_row();

  const std::string& str() const { return out_; }

 private:
  void sep();

  std::string out_;
  std::size_t columns_;
  std::size_t pending_ = 0;
};

// Writes to a sibling temporary file and renames it into place.
void atomic_write(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

}  // namespace flicker
