#include "descentlab/losses.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "descentlab/dataset.hpp"
#include "descentlab/error.hpp"
#include "descentlab/param_vector.hpp"

namespace descentlab {

namespace {

void check_shapes(std::span<const double> y_hat, std::span<const double> y) {
  require_same_size(y_hat.size(), y.size(), "loss");
  if (y.empty()) throw InvalidArgument("loss: label dimension must be >= 1");
}

std::size_t true_class(std::span<const double> y, LossKind kind) {
  if (!is_one_hot(y)) {
    throw InvalidArgument(std::string("loss: ") + std::string(to_string(kind)) +
                          " requires a one-hot label");
  }
  return static_cast<std::size_t>(std::find(y.begin(), y.end(), 1.0) - y.begin());
}

// A zero away from the true class contributes 0 · log 0 = 0, so only the
// true-class entry has to be strictly positive.
void check_probabilities(std::span<const double> y_hat, std::size_t true_index) {
  for (std::size_t j = 0; j < y_hat.size(); ++j) {
    const bool too_small = j == true_index ? !(y_hat[j] > 0.0) : !(y_hat[j] >= 0.0);
    if (too_small || y_hat[j] > 1.0) {
      throw DomainError("loss: cross entropy needs predictions in (0, 1], got " +
                        std::to_string(y_hat[j]) + " at index " + std::to_string(j));
    }
  }
}

}  // namespace

std::string_view to_string(LossKind kind) noexcept {
  switch (kind) {
    case LossKind::MSE: return "mse";
    case LossKind::MAE: return "mae";
    case LossKind::Hinge: return "hinge";
    case LossKind::CrossEntropy: return "cross_entropy";
  }
  return "unknown";
}

LossKind parse_loss_kind(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "mse") return LossKind::MSE;
  if (lower == "mae") return LossKind::MAE;
  if (lower == "hinge") return LossKind::Hinge;
  if (lower == "cross_entropy" || lower == "ce" || lower == "crossentropy") {
    return LossKind::CrossEntropy;
  }
  throw InvalidArgument("unknown loss kind '" + std::string(name) + "'");
}

double loss(LossKind kind, std::span<const double> y_hat, std::span<const double> y) {
  check_shapes(y_hat, y);
  const auto d = static_cast<double>(y.size());
  double acc = 0.0;
  switch (kind) {
    case LossKind::MSE:
      for (std::size_t j = 0; j < y.size(); ++j) acc += (y[j] - y_hat[j]) * (y[j] - y_hat[j]);
      return acc / d;
    case LossKind::MAE:
      for (std::size_t j = 0; j < y.size(); ++j) acc += std::abs(y[j] - y_hat[j]);
      return acc / d;
    case LossKind::Hinge: {
      const std::size_t l = true_class(y, kind);
      for (std::size_t j = 0; j < y.size(); ++j) {
        if (j != l) acc += std::max(0.0, y_hat[j] - y_hat[l] + 1.0);
      }
      return acc;
    }
    case LossKind::CrossEntropy:
      check_probabilities(y_hat, true_class(y, kind));
      for (std::size_t j = 0; j < y.size(); ++j) {
        if (y[j] != 0.0) acc -= y[j] * std::log(y_hat[j]);
      }
      return acc;
  }
  throw InvalidArgument("loss: unknown kind");
}

std::vector<double> loss_grad(LossKind kind, std::span<const double> y_hat,
                              std::span<const double> y) {
  check_shapes(y_hat, y);
  const auto d = static_cast<double>(y.size());
  std::vector<double> grad(y.size(), 0.0);
  switch (kind) {
    case LossKind::MSE:
      for (std::size_t j = 0; j < y.size(); ++j) grad[j] = 2.0 * (y_hat[j] - y[j]) / d;
      return grad;
    case LossKind::MAE:
      for (std::size_t j = 0; j < y.size(); ++j) {
        const double diff = y_hat[j] - y[j];
        grad[j] = diff > 0.0 ? 1.0 / d : (diff < 0.0 ? -1.0 / d : 0.0);
      }
      return grad;
    case LossKind::Hinge: {
      const std::size_t l = true_class(y, kind);
      for (std::size_t j = 0; j < y.size(); ++j) {
        if (j != l && y_hat[j] - y_hat[l] + 1.0 > 0.0) {
          grad[j] += 1.0;
          grad[l] -= 1.0;
        }
      }
      return grad;
    }
    case LossKind::CrossEntropy:
      check_probabilities(y_hat, true_class(y, kind));
      for (std::size_t j = 0; j < y.size(); ++j) {
        if (y[j] != 0.0) grad[j] = -y[j] / y_hat[j];
      }
      return grad;
  }
  throw InvalidArgument("loss_grad: unknown kind");
}

double total_loss(LossKind kind, std::span<const double> y_hat_rows,
                  std::span<const double> y_rows, std::size_t d) {
  require_same_size(y_hat_rows.size(), y_rows.size(), "total_loss");
  if (d == 0 || y_rows.size() % d != 0) throw InvalidArgument("total_loss: bad row stride");
  double acc = 0.0;
  for (std::size_t start = 0; start < y_rows.size(); start += d) {
    acc += loss(kind, y_hat_rows.subspan(start, d), y_rows.subspan(start, d));
  }
  return acc;
}

std::vector<double> softmax(std::span<const double> logits) {
  if (logits.empty()) throw InvalidArgument("softmax: empty input");
  const double shift = *std::max_element(logits.begin(), logits.end());
  std::vector<double> out(logits.size());
  double sum = 0.0;
  for (std::size_t j = 0; j < logits.size(); ++j) {
    out[j] = std::exp(logits[j] - shift);
    sum += out[j];
  }
  for (double& p : out) p /= sum;
  return out;
}

SoftmaxCrossEntropy softmax_cross_entropy(std::span<const double> logits,
                                          std::span<const double> y) {
  check_shapes(logits, y);
  const std::size_t l = true_class(y, LossKind::CrossEntropy);
  const double shift = *std::max_element(logits.begin(), logits.end());
  double sum = 0.0;
  std::vector<double> grad(logits.size());
  for (std::size_t j = 0; j < logits.size(); ++j) {
    grad[j] = std::exp(logits[j] - shift);
    sum += grad[j];
  }
  const double log_sum = std::log(sum) + shift;
  for (std::size_t j = 0; j < logits.size(); ++j) grad[j] = grad[j] / sum - y[j];
  return {log_sum - logits[l], std::move(grad)};
}

}  // namespace descentlab
