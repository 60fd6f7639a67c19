#ifndef PRIVSPEC_IO_HPP
#define PRIVSPEC_IO_HPP

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace privspec::io {

//! Shortest decimal representation that parses back to the same double.
std::string format_double(double value);

//! Strict parse of a full token; throws std::invalid_argument otherwise.
double parse_double(std::string_view token);
long long parse_integer(std::string_view token);

std::vector<std::string> split(std::string_view line, char delimiter = ',');

/// Parsed CSV text. Lines starting with '#' are comments; the first
/// non-comment line is the header.
struct CsvTable {
  std::vector<std::string> comments;  // without the leading "# "
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(std::string_view name) const;
};

CsvTable parse_csv(std::string_view text);
CsvTable read_csv(const std::filesystem::path& path);

//! Reads `key=value` pairs separated by spaces from a comment line.
std::map<std::string, std::string> parse_key_values(std::string_view comment);

std::string read_file(const std::filesystem::path& path);

//! Writes through a sibling temporary file and renames it into place.
void atomic_write(const std::filesystem::path& path, std::string_view content);

}  // namespace privspec::io

#endif  // PRIVSPEC_IO_HPP
