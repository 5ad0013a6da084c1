#include "descentlab/grad_check.hpp"

#include <cmath>

#include "descentlab/error.hpp"

namespace descentlab {

GradCheckReport grad_check_report(const Objective& objective, const ParamVector& theta,
                                  const Batch& batch) {
  if (objective.dim() == 0) throw InvalidArgument("grad_check: zero-dimensional objective");
  const ParamVector analytic = objective.evaluate(theta, batch).grad;

  GradCheckReport report;
  ParamVector probe = theta;
  for (std::size_t i = 0; i < theta.size(); ++i) {
    const double h = 1e-5 * (1.0 + std::abs(theta[i]));
    probe[i] = theta[i] + h;
    const double up = objective.value(probe, batch);
    probe[i] = theta[i] - h;
    const double down = objective.value(probe, batch);
    probe[i] = theta[i];

    const double fd = (up - down) / (2.0 * h);
    if (!std::isfinite(fd)) throw NumericError("grad_check: non-finite difference", i);
    const double err = std::abs(fd - analytic[i]) / (std::abs(fd) + std::abs(analytic[i]) + 1e-12);
    if (err > report.max_rel_error) {
      report.max_rel_error = err;
      report.worst_index = i;
    }
  }
  return report;
}

double grad_check(const Objective& objective, const ParamVector& theta, const Batch& batch) {
  return grad_check_report(objective, theta, batch).max_rel_error;
}

}  // namespace descentlab
