#include "descentlab/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>

#include "descentlab/error.hpp"

namespace descentlab {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream stream(line);
  while (std::getline(stream, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

}  // namespace

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw InvalidArgument("csv: missing column '" + name + "'");
}

CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw InvalidArgument("csv: empty input, header row expected");
  strip_cr(line);
  // UTF-8 byte order mark
  if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
  table.header = split_line(line);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (line.empty()) continue;
    auto cells = split_line(line);
    if (cells.size() != table.header.size()) {
      throw InvalidArgument("csv: line " + std::to_string(line_no) + " has " +
                            std::to_string(cells.size()) + " cells, header has " +
                            std::to_string(table.header.size()));
    }
    table.rows.push_back(std::move(cells));
  }
  return table;
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("csv: cannot open " + path.string());
  return read_csv(in);
}

std::string format_double(double value) {
  char buf[32];
  const int len = std::snprintf(buf, sizeof buf, "%.17g", value);
  return std::string(buf, static_cast<std::size_t>(len));
}

double parse_double(const std::string& cell) {
  double value = 0.0;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  while (first < last && *first == ' ') ++first;
  while (last > first && last[-1] == ' ') --last;
  if (first < last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw InvalidArgument("csv: not a number: '" + cell + "'");
  }
  return value;
}

}  // namespace descentlab
