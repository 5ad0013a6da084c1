#pragma once

#include <cstddef>
#include <functional>

namespace descentlab {

/// Runs fn(0) .. fn(count - 1) on up to `workers` threads and waits for all of
/// them. Each index runs exactly once; callers write results into per-index
/// slots so the outcome never depends on scheduling. workers <= 1 runs inline.
/// The first exception thrown by any task is rethrown after the join.
void parallel_for(std::size_t count, std::size_t workers,
                  const std::function<void(std::size_t)>& fn);

}  // namespace descentlab
