#pragma once

#include <cstddef>
#include <memory>

#include "descentlab/objective.hpp"

namespace descentlab {

// Supervised objectives report the MEAN per-instance loss over the batch, so a
// learning rate means the same thing for any batch size.
//
// Parameter packing is fixed: for each layer, the weight matrix in row-major
// order (out × in) followed by its bias vector (out). Gadam's crossover indexes
// these entries directly.

/// Linear model ŷ = W x + b with the per-instance MSE loss.
class LinearRegression final : public Objective {
 public:
  LinearRegression(std::size_t d_x, std::size_t d_y);

  std::size_t dim() const noexcept override { return d_y_ * (d_x_ + 1); }
  std::string name() const override { return "linear_regression"; }
  bool needs_data() const noexcept override { return true; }

 protected:
  Evaluation do_evaluate(const ParamVector& theta, const Batch& batch) const override;

 private:
  std::size_t d_x_;
  std::size_t d_y_;
};

/// Multinomial logistic regression: softmax(W x + b) with cross entropy.
class SoftmaxRegression final : public Objective {
 public:
  SoftmaxRegression(std::size_t d_x, std::size_t d_y);

  std::size_t dim() const noexcept override { return d_y_ * (d_x_ + 1); }
  std::string name() const override { return "softmax_regression"; }
  bool needs_data() const noexcept override { return true; }

 protected:
  Evaluation do_evaluate(const ParamVector& theta, const Batch& batch) const override;

 private:
  std::size_t d_x_;
  std::size_t d_y_;
};

struct MlpSpec {
  std::size_t inputs = 0;
  std::size_t hidden = 0;
  std::size_t classes = 0;

  /// h (d_x + 1) + d_y (h + 1)
  std::size_t parameter_count() const noexcept {
    return hidden * (inputs + 1) + classes * (hidden + 1);
  }
};

/// One tanh hidden layer, softmax output, cross entropy.
/// θ = [W1 (h × d_x), b1 (h), W2 (d_y × h), b2 (d_y)].
class Mlp final : public Objective {
 public:
  explicit Mlp(MlpSpec spec);

  std::size_t dim() const noexcept override { return spec_.parameter_count(); }
  std::string name() const override { return "mlp"; }
  bool needs_data() const noexcept override { return true; }
  const MlpSpec& spec() const noexcept { return spec_; }

 protected:
  Evaluation do_evaluate(const ParamVector& theta, const Batch& batch) const override;

 private:
  MlpSpec spec_;
};

std::unique_ptr<Objective> linear_regression(std::size_t d_x, std::size_t d_y);
std::unique_ptr<Objective> softmax_regression(std::size_t d_x, std::size_t d_y);
std::unique_ptr<Objective> mlp(MlpSpec spec);

}  // namespace descentlab
