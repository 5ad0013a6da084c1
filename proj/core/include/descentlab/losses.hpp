#pragma once

#include <span>
#include <string_view>
#include <vector>

namespace descentlab {

enum class LossKind { MSE, MAE, Hinge, CrossEntropy };

std::string_view to_string(LossKind kind) noexcept;
/// Accepts "mse", "mae", "hinge", "cross_entropy" (case-insensitive).
LossKind parse_loss_kind(std::string_view name);

/// Per-instance loss ℓ(ŷ, y).
///
///   MSE   (1/d) Σ (y_j − ŷ_j)²
///   MAE   (1/d) Σ |y_j − ŷ_j|
///   Hinge Σ_{j≠l} max(0, ŷ_j − ŷ_l + 1), l the true class; no 1/d factor
///   CE    −Σ y_j ln ŷ_j
///
/// Hinge and CrossEntropy require a one-hot y (InvalidArgument otherwise).
/// CrossEntropy requires every ŷ_j in (0, 1] (DomainError otherwise).
double loss(LossKind kind, std::span<const double> y_hat, std::span<const double> y);

/// ∂ℓ/∂ŷ. Non-smooth points use subgradient 0 (MAE at ŷ_j = y_j, Hinge at a
/// margin of exactly zero).
std::vector<double> loss_grad(LossKind kind, std::span<const double> y_hat,
                              std::span<const double> y);

/// Sum of per-instance losses over rows laid out contiguously with stride d.
double total_loss(LossKind kind, std::span<const double> y_hat_rows,
                  std::span<const double> y_rows, std::size_t d);

/// Numerically stable softmax (max-shifted).
std::vector<double> softmax(std::span<const double> logits);

struct SoftmaxCrossEntropy {
  double loss;
  std::vector<double> grad_logits;  // softmax(z) − y
};

/// Cross entropy of softmax(logits) against a one-hot y, computed through
/// log-sum-exp so that saturated logits never produce log(0).
SoftmaxCrossEntropy softmax_cross_entropy(std::span<const double> logits,
                                          std::span<const double> y);

}  // namespace descentlab
