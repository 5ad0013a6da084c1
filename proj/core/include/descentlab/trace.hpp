#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace descentlab {

/// One row of a convergence log; one row per parameter update.
struct TraceRecord {
  std::string run_id;
  std::string optimizer;
  std::size_t epoch = 0;
  std::size_t iteration = 0;    // τ, 1-based
  std::size_t batch_index = 0;  // position of the batch inside its epoch
  double loss = 0.0;
  double grad_norm = 0.0;
  double wall_ms = 0.0;
};

/// Column order of the trace CSV.
inline constexpr const char* kTraceHeader =
    "run_id,optimizer,epoch,iteration,batch_index,loss,grad_norm,wall_ms";

void write_trace_csv(std::ostream& out, const std::vector<TraceRecord>& trace);
void write_trace_csv(const std::filesystem::path& path, const std::vector<TraceRecord>& trace);
std::vector<TraceRecord> read_trace_csv(const std::filesystem::path& path);
std::vector<TraceRecord> read_trace_csv(std::istream& in);

}  // namespace descentlab
