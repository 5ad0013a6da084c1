#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace descentlab {

/// Convergence test for a training run. Every rule carries a hard cap on the
/// number of updates.
struct StopRule {
  enum class Mode { LossDelta, ParamDelta, MaxIters };

  Mode mode = Mode::LossDelta;
  double threshold = 1e-8;     // for LossDelta / ParamDelta
  std::size_t max_iters = 1000;

  static StopRule loss_delta(double threshold, std::size_t cap);
  static StopRule param_delta(double threshold, std::size_t cap);
  static StopRule iterations(std::size_t count);

  /// Throws InvalidArgument unless cap >= 1 and threshold > 0.
  void validate() const;
};

std::string_view to_string(StopRule::Mode mode) noexcept;
/// "loss_delta", "param_delta" or "max_iters".
StopRule::Mode parse_stop_mode(std::string_view name);

/// What the convergence test looks at: the update count so far, the sequence
/// of checkpoint losses (one per epoch), and the parameter displacement over
/// the most recent epoch.
struct StopHistory {
  std::size_t updates = 0;
  std::vector<double> losses;
  double param_delta = 0.0;
};

/// True iff the cap is reached or the configured condition holds. Delta modes
/// need at least two losses (LossDelta) or one completed epoch (ParamDelta).
bool check_stop(const StopRule& rule, const StopHistory& history);

}  // namespace descentlab
