#include "descentlab/optimizer.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "descentlab/error.hpp"

namespace descentlab {

namespace {

std::string lowercase(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

std::string_view to_string(OptimizerKind kind) noexcept {
  switch (kind) {
    case OptimizerKind::VanillaGD: return "VanillaGD";
    case OptimizerKind::SGD: return "SGD";
    case OptimizerKind::MiniBatchGD: return "MiniBatchGD";
    case OptimizerKind::Momentum: return "Momentum";
    case OptimizerKind::NAG: return "NAG";
    case OptimizerKind::Adagrad: return "Adagrad";
    case OptimizerKind::RMSprop: return "RMSprop";
    case OptimizerKind::Adadelta: return "Adadelta";
    case OptimizerKind::Adam: return "Adam";
    case OptimizerKind::Nadam: return "Nadam";
  }
  return "unknown";
}

OptimizerKind parse_optimizer_kind(std::string_view name) {
  const std::string wanted = lowercase(name);
  for (OptimizerKind kind : kAllOptimizerKinds) {
    if (lowercase(to_string(kind)) == wanted) return kind;
  }
  throw InvalidArgument("unknown optimizer '" + std::string(name) + "'");
}

bool uses_learning_rate(OptimizerKind kind) noexcept { return kind != OptimizerKind::Adadelta; }

void OptimizerConfig::validate() const {
  const auto bad = [this](const std::string& what) {
    return InvalidArgument(std::string(to_string(kind)) + ": " + what);
  };
  if (uses_learning_rate(kind) && !(eta > 0.0 && std::isfinite(eta))) {
    throw bad("learning rate eta must be > 0");
  }
  if (!(rho >= 0.0 && rho <= 1.0)) throw bad("rho must be in [0, 1]");
  if (!(beta1 >= 0.0 && beta1 < 1.0)) throw bad("beta1 must be in [0, 1)");
  if (!(beta2 >= 0.0 && beta2 < 1.0)) throw bad("beta2 must be in [0, 1)");
  if (!(epsilon > 0.0 && std::isfinite(epsilon))) throw bad("epsilon must be > 0");
  if (!(lr_decay >= 0.0 && std::isfinite(lr_decay))) throw bad("lr_decay must be >= 0");
}

Optimizer::Optimizer(OptimizerConfig config, std::size_t dim) : config_(config), dim_(dim) {
  config_.validate();
  if (dim_ == 0) throw InvalidArgument("optimizer: dimension must be >= 1");
  reset();
}

void Optimizer::reset() {
  state_ = OptimizerState{};
  state_.delta_v = ParamVector(dim_);
  state_.sq_accum = ParamVector(dim_);
  state_.delta_accum = ParamVector(dim_);
  state_.m = ParamVector(dim_);
  state_.v = ParamVector(dim_);
}

void Optimizer::check_gradient(const ParamVector& grad) const {
  require_same_size(grad.size(), dim_, "optimizer gradient");
  for (std::size_t i = 0; i < grad.size(); ++i) {
    if (!std::isfinite(grad[i])) {
      throw NumericError("step " + std::to_string(state_.step) + ": non-finite gradient at index " +
                             std::to_string(i),
                         i, state_.step);
    }
  }
}

StepResult Optimizer::step(const ParamVector& theta, const GradientOracle& oracle) {
  require_same_size(theta.size(), dim_, "optimizer parameters");
  const OptimizerConfig& c = config_;
  OptimizerState& s = state_;
  s.step += 1;
  const std::size_t tau = s.step;

  StepResult result;
  result.theta = theta;
  ParamVector& next = result.theta;

  Evaluation eval;
  if (c.kind == OptimizerKind::NAG) {
    // Look-ahead point θ̂ = θ − η ρ Δv; only the gradient is taken there.
    ParamVector look_ahead(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
      look_ahead[i] = theta[i] - c.eta * c.rho * s.delta_v[i];
    }
    eval = oracle(look_ahead);
  } else {
    eval = oracle(theta);
  }
  const ParamVector& g = eval.grad;
  check_gradient(g);
  result.loss = eval.loss;
  result.grad_norm = norm(g);

  switch (c.kind) {
    case OptimizerKind::VanillaGD:
    case OptimizerKind::SGD:
    case OptimizerKind::MiniBatchGD: {
      const double eta = c.lr_decay == 0.0
                             ? c.eta
                             : c.eta / (1.0 + c.lr_decay * static_cast<double>(tau - 1));
      for (std::size_t i = 0; i < dim_; ++i) next[i] = theta[i] - eta * g[i];
      break;
    }
    case OptimizerKind::Momentum:
    case OptimizerKind::NAG:
      for (std::size_t i = 0; i < dim_; ++i) {
        s.delta_v[i] = c.rho * s.delta_v[i] + (1.0 - c.rho) * g[i];
        next[i] = theta[i] - c.eta * s.delta_v[i];
      }
      break;
    case OptimizerKind::Adagrad:
      for (std::size_t i = 0; i < dim_; ++i) {
        s.sq_accum[i] += g[i] * g[i];
        next[i] = theta[i] - c.eta / std::sqrt(s.sq_accum[i] + c.epsilon) * g[i];
      }
      break;
    case OptimizerKind::RMSprop:
      for (std::size_t i = 0; i < dim_; ++i) {
        s.sq_accum[i] = c.rho * s.sq_accum[i] + (1.0 - c.rho) * g[i] * g[i];
        next[i] = theta[i] - c.eta / std::sqrt(s.sq_accum[i] + c.epsilon) * g[i];
      }
      break;
    case OptimizerKind::Adadelta:
      for (std::size_t i = 0; i < dim_; ++i) {
        s.sq_accum[i] = c.rho * s.sq_accum[i] + (1.0 - c.rho) * g[i] * g[i];
        const double delta = -std::sqrt(s.delta_accum[i] + c.epsilon) /
                             std::sqrt(s.sq_accum[i] + c.epsilon) * g[i];
        s.delta_accum[i] = c.rho * s.delta_accum[i] + (1.0 - c.rho) * delta * delta;
        next[i] = theta[i] + delta;
      }
      break;
    case OptimizerKind::Adam:
    case OptimizerKind::Nadam: {
      const double t = static_cast<double>(tau);
      const double m_correction = 1.0 - std::pow(c.beta1, t);
      const double v_correction = 1.0 - std::pow(c.beta2, t);
      for (std::size_t i = 0; i < dim_; ++i) {
        s.m[i] = c.beta1 * s.m[i] + (1.0 - c.beta1) * g[i];
        s.v[i] = c.beta2 * s.v[i] + (1.0 - c.beta2) * g[i] * g[i];
        const double m_hat = s.m[i] / m_correction;
        const double v_hat = s.v[i] / v_correction;
        const double direction = c.kind == OptimizerKind::Adam
                                     ? m_hat
                                     : c.beta1 * m_hat + (1.0 - c.beta1) * g[i] / m_correction;
        next[i] = theta[i] - c.eta / (std::sqrt(v_hat) + c.epsilon) * direction;
      }
      break;
    }
  }

  for (std::size_t i = 0; i < dim_; ++i) {
    if (!std::isfinite(next[i])) {
      throw NumericError("step " + std::to_string(tau) + ": non-finite parameter at index " +
                             std::to_string(i),
                         i, tau);
    }
  }
  return result;
}

ParamVector Optimizer::effective_rates() const {
  const OptimizerConfig& c = config_;
  const OptimizerState& s = state_;
  ParamVector rates(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    switch (c.kind) {
      case OptimizerKind::Adagrad:
      case OptimizerKind::RMSprop:
        rates[i] = c.eta / std::sqrt(s.sq_accum[i] + c.epsilon);
        break;
      case OptimizerKind::Adadelta:
        rates[i] = std::sqrt(s.delta_accum[i] + c.epsilon) / std::sqrt(s.sq_accum[i] + c.epsilon);
        break;
      case OptimizerKind::Adam:
      case OptimizerKind::Nadam: {
        if (s.step == 0) {
          rates[i] = c.eta / c.epsilon;
          break;
        }
        const double v_hat = s.v[i] / (1.0 - std::pow(c.beta2, static_cast<double>(s.step)));
        rates[i] = c.eta / (std::sqrt(v_hat) + c.epsilon);
        break;
      }
      case OptimizerKind::VanillaGD:
      case OptimizerKind::SGD:
      case OptimizerKind::MiniBatchGD:
        rates[i] = c.lr_decay == 0.0
                       ? c.eta
                       : c.eta / (1.0 + c.lr_decay * static_cast<double>(s.step));
        break;
      case OptimizerKind::Momentum:
      case OptimizerKind::NAG:
        rates[i] = c.eta;
        break;
    }
  }
  return rates;
}

}  // namespace descentlab
