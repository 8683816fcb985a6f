#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace wavescale {

struct CsvTable {
  std::filesystem::path source;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> line_numbers;  // 1-based source line of each row
};

/// Comma-separated fields; double quotes may enclose a field containing commas.
std::vector<std::string> split_csv_line(std::string_view line);

/// Reads a CSV file with a mandatory header row. Blank lines are skipped, a
/// UTF-8 byte order mark and CR line endings are tolerated. Throws
/// IngestionError when the file cannot be opened or has no header.
CsvTable read_csv(const std::filesystem::path& path);

/// Parses a decimal floating point field; `context` names the record in errors.
double parse_double(std::string_view field, const std::string& context);

/// Shortest representation that round-trips, or `precision` significant digits.
std::string format_number(double value, int precision = 0);

std::string trim(std::string_view s);

}  // namespace wavescale
