#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace descentlab {

/// Header row plus raw string cells. Parsing into numbers is left to callers.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Column position of `name`; throws InvalidArgument if absent.
  std::size_t column(const std::string& name) const;
};

CsvTable read_csv(std::istream& in);
CsvTable read_csv(const std::filesystem::path& path);

/// Shortest text that round-trips the double exactly ("%.17g").
std::string format_double(double value);
/// Strict parse of a whole cell; throws InvalidArgument on trailing junk.
double parse_double(const std::string& cell);

}  // namespace descentlab
