#pragma once

#include <cstddef>
#include <functional>
#include <string_view>

#include "descentlab/objective.hpp"
#include "descentlab/param_vector.hpp"

namespace descentlab {

enum class OptimizerKind {
  VanillaGD,
  SGD,
  MiniBatchGD,
  Momentum,
  NAG,
  Adagrad,
  RMSprop,
  Adadelta,
  Adam,
  Nadam,
};

inline constexpr OptimizerKind kAllOptimizerKinds[] = {
    OptimizerKind::VanillaGD, OptimizerKind::SGD,      OptimizerKind::MiniBatchGD,
    OptimizerKind::Momentum,  OptimizerKind::NAG,      OptimizerKind::Adagrad,
    OptimizerKind::RMSprop,   OptimizerKind::Adadelta, OptimizerKind::Adam,
    OptimizerKind::Nadam,
};

std::string_view to_string(OptimizerKind kind) noexcept;
/// Case-insensitive; accepts the enumerator names ("Adam", "MiniBatchGD", ...).
OptimizerKind parse_optimizer_kind(std::string_view name);
/// Adadelta is the only rule without a learning rate.
bool uses_learning_rate(OptimizerKind kind) noexcept;

struct OptimizerConfig {
  OptimizerKind kind = OptimizerKind::MiniBatchGD;
  double eta = 0.01;
  /// Momentum weight for Momentum/NAG, decay of the squared-gradient average
  /// for RMSprop/Adadelta.
  double rho = 0.9;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  /// γ in η_τ = η / (1 + γ (τ − 1)) for the plain gradient-descent kinds.
  double lr_decay = 0.0;

  /// Throws InvalidArgument on out-of-range values.
  void validate() const;
};

/// Accumulators for every rule; a rule only touches the ones it uses. All
/// start at zero.
struct OptimizerState {
  std::size_t step = 0;     // τ, number of completed updates
  ParamVector delta_v;      // momentum Δv
  ParamVector sq_accum;     // diag(G)
  ParamVector delta_accum;  // diag(Θ), Adadelta
  ParamVector m;            // Adam first moment
  ParamVector v;            // Adam second moment
};

using GradientOracle = std::function<Evaluation(const ParamVector&)>;

struct StepResult {
  ParamVector theta;
  /// Loss and gradient norm reported by the oracle call of this step (for NAG
  /// that call is at the look-ahead point).
  double loss = 0.0;
  double grad_norm = 0.0;
};

/// One stateful update rule. Not thread-safe; one instance per run.
class Optimizer {
 public:
  Optimizer(OptimizerConfig config, std::size_t dim);

  /// Computes one update from θ, calling the oracle exactly once.
  /// Throws NumericError (with step and coordinate) if the gradient or the
  /// updated θ is not finite.
  StepResult step(const ParamVector& theta, const GradientOracle& oracle);

  const OptimizerConfig& config() const noexcept { return config_; }
  const OptimizerState& state() const noexcept { return state_; }
  std::size_t dim() const noexcept { return dim_; }

  /// Per-coordinate multiplier of the gradient under the current state:
  /// η/√(G_ii + ε) for Adagrad and RMSprop, √(Θ_ii + ε)/√(G_ii + ε) for
  /// Adadelta, η/(√v̂_i + ε) for Adam/Nadam, and η_τ for the rest.
  ParamVector effective_rates() const;

  void reset();

 private:
  void check_gradient(const ParamVector& grad) const;

  OptimizerConfig config_;
  std::size_t dim_;
  OptimizerState state_;
};

}  // namespace descentlab
