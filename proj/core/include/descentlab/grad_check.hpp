#pragma once

#include <cstddef>

#include "descentlab/objective.hpp"

namespace descentlab {

struct GradCheckReport {
  double max_rel_error = 0.0;
  std::size_t worst_index = 0;
};

/// Compares the analytic gradient against central differences with a
/// per-coordinate step h_i = 1e-5 (1 + |θ_i|). The error for coordinate i is
/// |fd − g| / (|fd| + |g| + 1e-12); the report carries the maximum.
/// A non-finite evaluation throws NumericError.
GradCheckReport grad_check_report(const Objective& objective, const ParamVector& theta,
                                  const Batch& batch = {});

double grad_check(const Objective& objective, const ParamVector& theta, const Batch& batch = {});

}  // namespace descentlab
