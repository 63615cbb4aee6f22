#pragma once

#include <filesystem>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace frqme {

/// Shortest-round-trip-safe rendering with 17 significant digits, '.' as the
/// decimal separator regardless of locale.
std::string format_double(double value);

/// Parses a double without locale dependence; returns false on trailing junk.
bool parse_double(std::string_view text, double& out);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  /// Appends a row; its width must match the header.
  void add_row(std::vector<std::string> cells);

  std::size_t rows() const noexcept { return rows_.size(); }
  std::string str() const;

  /// Writes the table; throws frqme::ConfigError if the file cannot be written.
  void write(const std::filesystem::path& path) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

/// Writes `contents` to `path`, creating parent directories.
/// Throws frqme::ConfigError when the location is not writable.
void write_text_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace frqme
