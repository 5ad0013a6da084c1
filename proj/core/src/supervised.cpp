#include "descentlab/supervised.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "descentlab/error.hpp"
#include "descentlab/losses.hpp"

namespace descentlab {

namespace {

void check_dims(const Batch& batch, std::size_t d_x, std::size_t d_y, const std::string& who,
                bool classification) {
  const Dataset& data = *batch.data();
  if (data.feature_dim() != d_x || data.label_dim() != d_y) {
    throw InvalidArgument(who + ": dataset is " + std::to_string(data.feature_dim()) + " -> " +
                          std::to_string(data.label_dim()) + ", model expects " +
                          std::to_string(d_x) + " -> " + std::to_string(d_y));
  }
  if (classification && data.task() != Task::Classification) {
    throw InvalidArgument(who + ": needs a classification dataset with one-hot labels");
  }
}

// out = W x + b for W (rows × cols) stored at weights, b right after it.
void affine(const double* weights, std::size_t rows, std::size_t cols,
            std::span<const double> x, std::vector<double>& out) {
  out.assign(rows, 0.0);
  const double* bias = weights + rows * cols;
  for (std::size_t r = 0; r < rows; ++r) {
    double acc = bias[r];
    const double* w = weights + r * cols;
    for (std::size_t c = 0; c < cols; ++c) acc += w[c] * x[c];
    out[r] = acc;
  }
}

// grad_W += delta xᵀ, grad_b += delta.
void accumulate_affine_grad(double* grad, std::size_t rows, std::size_t cols,
                            std::span<const double> delta, std::span<const double> x) {
  double* grad_bias = grad + rows * cols;
  for (std::size_t r = 0; r < rows; ++r) {
    double* g = grad + r * cols;
    for (std::size_t c = 0; c < cols; ++c) g[c] += delta[r] * x[c];
    grad_bias[r] += delta[r];
  }
}

}  // namespace

LinearRegression::LinearRegression(std::size_t d_x, std::size_t d_y) : d_x_(d_x), d_y_(d_y) {
  if (d_x_ == 0 || d_y_ == 0) throw InvalidArgument("linear_regression: dims must be >= 1");
}

Evaluation LinearRegression::do_evaluate(const ParamVector& theta, const Batch& batch) const {
  check_dims(batch, d_x_, d_y_, name(), false);
  const Dataset& data = *batch.data();
  Evaluation eval{0.0, ParamVector(dim())};
  std::vector<double> y_hat;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const std::size_t row = batch.row(i);
    affine(theta.span().data(), d_y_, d_x_, data.x(row), y_hat);
    eval.loss += loss(LossKind::MSE, y_hat, data.y(row));
    const auto delta = loss_grad(LossKind::MSE, y_hat, data.y(row));
    accumulate_affine_grad(eval.grad.span().data(), d_y_, d_x_, delta, data.x(row));
  }
  const double inv = 1.0 / static_cast<double>(batch.size());
  eval.loss *= inv;
  for (double& g : eval.grad) g *= inv;
  return eval;
}

SoftmaxRegression::SoftmaxRegression(std::size_t d_x, std::size_t d_y) : d_x_(d_x), d_y_(d_y) {
  if (d_x_ == 0) throw InvalidArgument("softmax_regression: d_x must be >= 1");
  if (d_y_ < 2) throw InvalidArgument("softmax_regression: needs at least two classes");
}

Evaluation SoftmaxRegression::do_evaluate(const ParamVector& theta, const Batch& batch) const {
  check_dims(batch, d_x_, d_y_, name(), true);
  const Dataset& data = *batch.data();
  Evaluation eval{0.0, ParamVector(dim())};
  std::vector<double> logits;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const std::size_t row = batch.row(i);
    affine(theta.span().data(), d_y_, d_x_, data.x(row), logits);
    const auto ce = softmax_cross_entropy(logits, data.y(row));
    eval.loss += ce.loss;
    accumulate_affine_grad(eval.grad.span().data(), d_y_, d_x_, ce.grad_logits, data.x(row));
  }
  const double inv = 1.0 / static_cast<double>(batch.size());
  eval.loss *= inv;
  for (double& g : eval.grad) g *= inv;
  return eval;
}

Mlp::Mlp(MlpSpec spec) : spec_(spec) {
  if (spec_.inputs == 0 || spec_.hidden == 0) throw InvalidArgument("mlp: widths must be >= 1");
  if (spec_.classes < 2) throw InvalidArgument("mlp: needs at least two classes");
}

Evaluation Mlp::do_evaluate(const ParamVector& theta, const Batch& batch) const {
  const auto [d_x, h, d_y] = spec_;
  check_dims(batch, d_x, d_y, name(), true);
  const Dataset& data = *batch.data();

  const double* first = theta.span().data();
  const double* second = first + h * (d_x + 1);
  Evaluation eval{0.0, ParamVector(dim())};
  double* grad_first = eval.grad.span().data();
  double* grad_second = grad_first + h * (d_x + 1);

  std::vector<double> hidden;
  std::vector<double> logits;
  std::vector<double> hidden_delta(h);
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const std::size_t row = batch.row(i);
    affine(first, h, d_x, data.x(row), hidden);
    for (double& a : hidden) a = std::tanh(a);
    affine(second, d_y, h, hidden, logits);
    const auto ce = softmax_cross_entropy(logits, data.y(row));
    eval.loss += ce.loss;

    accumulate_affine_grad(grad_second, d_y, h, ce.grad_logits, hidden);
    for (std::size_t k = 0; k < h; ++k) {
      double back = 0.0;
      for (std::size_t j = 0; j < d_y; ++j) back += second[j * h + k] * ce.grad_logits[j];
      hidden_delta[k] = back * (1.0 - hidden[k] * hidden[k]);
    }
    accumulate_affine_grad(grad_first, h, d_x, hidden_delta, data.x(row));
  }
  const double inv = 1.0 / static_cast<double>(batch.size());
  eval.loss *= inv;
  for (double& g : eval.grad) g *= inv;
  return eval;
}

std::unique_ptr<Objective> linear_regression(std::size_t d_x, std::size_t d_y) {
  return std::make_unique<LinearRegression>(d_x, d_y);
}

std::unique_ptr<Objective> softmax_regression(std::size_t d_x, std::size_t d_y) {
  return std::make_unique<SoftmaxRegression>(d_x, d_y);
}

std::unique_ptr<Objective> mlp(MlpSpec spec) { return std::make_unique<Mlp>(spec); }

}  // namespace descentlab
