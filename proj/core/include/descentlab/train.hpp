#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "descentlab/dataset.hpp"
#include "descentlab/error.hpp"
#include "descentlab/objective.hpp"
#include "descentlab/optimizer.hpp"
#include "descentlab/rng.hpp"
#include "descentlab/stop_rule.hpp"
#include "descentlab/trace.hpp"

namespace descentlab {

struct TrainOptions {
  /// Mini-batch size b. VanillaGD always uses the whole set and SGD always
  /// uses b = 1; values above n are clamped to n.
  std::size_t batch_size = 32;
  std::string run_id = "run";
  /// Return the lowest-loss point the oracle was evaluated at (the start point
  /// included) instead of the last iterate.
  bool keep_best_iterate = false;
  bool record_trace = true;
  /// Called after every update with the stepper and the row just recorded.
  std::function<void(const Optimizer&, const TraceRecord&)> on_update;
};

struct TrainResult {
  ParamVector theta;
  std::vector<TraceRecord> trace;
  std::size_t updates = 0;
  std::size_t epochs = 0;
  /// True when the stop rule's condition fired before the cap.
  bool converged = false;
  /// Lowest oracle loss seen (only meaningful with keep_best_iterate).
  double best_loss = 0.0;
};

/// A step failed numerically. Carries the trace recorded up to the failure.
class TrainingFailure : public NumericError {
 public:
  TrainingFailure(const NumericError& cause, std::vector<TraceRecord> partial)
      : NumericError(cause.what(), cause.index(), cause.step()), partial_(std::move(partial)) {}

  const std::vector<TraceRecord>& partial_trace() const noexcept { return partial_; }

 private:
  std::vector<TraceRecord> partial_;
};

/// Runs the outer loop shared by every update rule: reshuffle the training
/// set each epoch, feed its mini-batches to the stepper one by one, and test
/// the stop rule. Analytic objectives (no dataset) take one full step per
/// epoch. `data` may be null only for objectives that do not need data.
/// Deterministic given the rng state.
TrainResult train(const Objective& objective, const Dataset* data, const OptimizerConfig& config,
                  const StopRule& stop, ParamVector theta0, Prng& rng,
                  const TrainOptions& options = {});

/// Loss on the whole dataset (or the analytic value when data is null).
double full_loss(const Objective& objective, const Dataset* data, const ParamVector& theta);

}  // namespace descentlab
