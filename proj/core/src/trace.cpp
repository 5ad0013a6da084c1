#include "descentlab/trace.hpp"

#include <fstream>
#include <ostream>

#include "descentlab/csv.hpp"
#include "descentlab/error.hpp"

namespace descentlab {

namespace {

std::size_t parse_count(const std::string& cell) {
  const double value = parse_double(cell);
  if (value < 0.0 || value != static_cast<double>(static_cast<std::size_t>(value))) {
    throw InvalidArgument("trace csv: not a count: '" + cell + "'");
  }
  return static_cast<std::size_t>(value);
}

}  // namespace

void write_trace_csv(std::ostream& out, const std::vector<TraceRecord>& trace) {
  out << kTraceHeader << '\n';
  for (const auto& r : trace) {
    out << r.run_id << ',' << r.optimizer << ',' << r.epoch << ',' << r.iteration << ','
        << r.batch_index << ',' << format_double(r.loss) << ',' << format_double(r.grad_norm)
        << ',' << format_double(r.wall_ms) << '\n';
  }
}

void write_trace_csv(const std::filesystem::path& path, const std::vector<TraceRecord>& trace) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("trace csv: cannot write " + path.string());
  write_trace_csv(out, trace);
}

std::vector<TraceRecord> read_trace_csv(std::istream& in) {
  const CsvTable table = read_csv(in);
  const std::size_t run_id = table.column("run_id");
  const std::size_t optimizer = table.column("optimizer");
  const std::size_t epoch = table.column("epoch");
  const std::size_t iteration = table.column("iteration");
  const std::size_t batch_index = table.column("batch_index");
  const std::size_t loss = table.column("loss");
  const std::size_t grad_norm = table.column("grad_norm");
  const std::size_t wall_ms = table.column("wall_ms");
  std::vector<TraceRecord> trace;
  trace.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    trace.push_back(TraceRecord{row[run_id], row[optimizer], parse_count(row[epoch]),
                                parse_count(row[iteration]), parse_count(row[batch_index]),
                                parse_double(row[loss]), parse_double(row[grad_norm]),
                                parse_double(row[wall_ms])});
  }
  return trace;
}

std::vector<TraceRecord> read_trace_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("trace csv: cannot open " + path.string());
  return read_trace_csv(in);
}

}  // namespace descentlab
