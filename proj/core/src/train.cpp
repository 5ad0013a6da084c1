#include "descentlab/train.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "descentlab/batch_plan.hpp"

namespace descentlab {

double full_loss(const Objective& objective, const Dataset* data, const ParamVector& theta) {
  if (data == nullptr) return objective.value(theta);
  return objective.value(theta, Batch::all(*data));
}

TrainResult train(const Objective& objective, const Dataset* data, const OptimizerConfig& config,
                  const StopRule& stop, ParamVector theta0, Prng& rng,
                  const TrainOptions& options) {
  stop.validate();
  if (objective.needs_data() && data == nullptr) {
    throw InvalidArgument("train: " + objective.name() + " needs a dataset");
  }
  require_same_size(theta0.size(), objective.dim(), "train: initial parameters");
  Optimizer optimizer(config, objective.dim());

  const bool analytic = data == nullptr;
  std::size_t batch_size = 1;
  if (!analytic) {
    switch (config.kind) {
      case OptimizerKind::VanillaGD: batch_size = data->size(); break;
      case OptimizerKind::SGD: batch_size = 1; break;
      default: batch_size = std::clamp<std::size_t>(options.batch_size, 1, data->size()); break;
    }
  }

  const auto started = std::chrono::steady_clock::now();
  const std::string optimizer_name(to_string(config.kind));

  TrainResult result;
  result.theta = std::move(theta0);
  result.best_loss = std::numeric_limits<double>::infinity();
  ParamVector best_theta = result.theta;
  StopHistory history;

  const auto run_update = [&](const Batch& batch, std::size_t batch_index) {
    GradientOracle oracle = [&](const ParamVector& point) {
      Evaluation eval = objective.evaluate(point, batch);
      if (options.keep_best_iterate && eval.loss < result.best_loss) {
        result.best_loss = eval.loss;
        best_theta = point;
      }
      return eval;
    };
    StepResult step = optimizer.step(result.theta, oracle);
    result.theta = std::move(step.theta);
    ++result.updates;
    history.updates = result.updates;

    TraceRecord record{options.run_id,
                       optimizer_name,
                       result.epochs,
                       result.updates,
                       batch_index,
                       step.loss,
                       step.grad_norm,
                       std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                                 started)
                           .count()};
    if (options.on_update) options.on_update(optimizer, record);
    if (options.record_trace) result.trace.push_back(std::move(record));
    return step.loss;
  };

  try {
    bool done = false;
    while (!done) {
      ++result.epochs;
      const ParamVector epoch_start = result.theta;
      double epoch_loss = 0.0;
      std::size_t epoch_updates = 0;
      bool capped = false;

      if (analytic) {
        epoch_loss += run_update(Batch{}, 0);
        ++epoch_updates;
        capped = result.updates >= stop.max_iters;
      } else if (config.kind == OptimizerKind::VanillaGD) {
        epoch_loss += run_update(Batch::all(*data), 0);
        ++epoch_updates;
        capped = result.updates >= stop.max_iters;
      } else {
        const BatchPlan plan = shuffle_and_partition(data->size(), batch_size, rng);
        for (std::size_t b = 0; b < plan.batch_count(); ++b) {
          epoch_loss += run_update(Batch(*data, plan.batch(b)), b);
          ++epoch_updates;
          if (result.updates >= stop.max_iters) {
            capped = true;
            break;
          }
        }
      }

      history.losses.push_back(epoch_loss / static_cast<double>(epoch_updates));
      history.param_delta = norm(sub(result.theta, epoch_start));
      if (capped) break;
      if (check_stop(stop, history)) {
        result.converged = stop.mode != StopRule::Mode::MaxIters;
        done = true;
      }
    }
  } catch (const NumericError& error) {
    // Errors raised inside the objective do not know the step; the failing
    // update is always the one after the last completed update.
    const NumericError located(error.what(), error.index(),
                               error.step().value_or(result.updates + 1));
    throw TrainingFailure(located, std::move(result.trace));
  }

  if (options.keep_best_iterate && std::isfinite(result.best_loss)) {
    result.theta = std::move(best_theta);
  }
  return result;
}

}  // namespace descentlab
