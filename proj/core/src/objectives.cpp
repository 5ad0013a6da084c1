#include "descentlab/objectives.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <cmath>
#include <numbers>
#include <string>

#include "descentlab/error.hpp"

namespace descentlab {

Evaluation Objective::evaluate(const ParamVector& theta, const Batch& batch) const {
  check_input(theta, batch);
  Evaluation eval = do_evaluate(theta, batch);
  if (!std::isfinite(eval.loss)) throw NumericError(name() + ": non-finite loss");
  require_same_size(eval.grad.size(), dim(), "objective gradient");
  require_finite(eval.grad.span(), "objective gradient");
  return eval;
}

double Objective::value(const ParamVector& theta, const Batch& batch) const {
  check_input(theta, batch);
  const double loss = do_value(theta, batch);
  if (!std::isfinite(loss)) throw NumericError(name() + ": non-finite loss");
  return loss;
}

void Objective::check_input(const ParamVector& theta, const Batch& batch) const {
  if (theta.size() != dim()) {
    throw InvalidArgument(name() + ": expected " + std::to_string(dim()) + " parameters, got " +
                          std::to_string(theta.size()));
  }
  require_finite(theta.span(), "objective input");
  if (needs_data() && batch.size() == 0) {
    throw InvalidArgument(name() + ": needs a non-empty data batch");
  }
}

QuadraticBowl::QuadraticBowl(std::vector<double> a, std::vector<double> b)
    : a_(std::move(a)), b_(std::move(b)) {
  const std::size_t d = b_.size();
  if (d == 0) throw InvalidArgument("quadratic_bowl: dimension must be >= 1");
  if (a_.size() != d * d) throw InvalidArgument("quadratic_bowl: A must be d x d");
  require_finite(a_, "quadratic_bowl A");
  require_finite(b_, "quadratic_bowl b");

  const auto n = static_cast<Eigen::Index>(d);
  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> a_map(
      a_.data(), n, n);
  if (!a_map.isApprox(a_map.transpose(), 1e-12)) {
    throw InvalidArgument("quadratic_bowl: A is not symmetric");
  }
  Eigen::LLT<Eigen::MatrixXd> llt(a_map);
  if (llt.info() != Eigen::Success) {
    throw InvalidArgument("quadratic_bowl: A is not positive definite (Cholesky failed)");
  }
  const Eigen::VectorXd solution = llt.solve(Eigen::Map<const Eigen::VectorXd>(b_.data(), n));
  optimum_ = ParamVector(std::vector<double>(solution.data(), solution.data() + n));
}

QuadraticBowl QuadraticBowl::diagonal(std::vector<double> diagonal, std::vector<double> b) {
  const std::size_t d = diagonal.size();
  std::vector<double> a(d * d, 0.0);
  for (std::size_t i = 0; i < d; ++i) a[i * d + i] = diagonal[i];
  return QuadraticBowl(std::move(a), std::move(b));
}

Evaluation QuadraticBowl::do_evaluate(const ParamVector& theta, const Batch&) const {
  const std::size_t d = dim();
  Evaluation eval{0.0, ParamVector(d)};
  for (std::size_t i = 0; i < d; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < d; ++j) row += a_[i * d + j] * theta[j];
    eval.grad[i] = row - b_[i];
    eval.loss += 0.5 * theta[i] * row - b_[i] * theta[i];
  }
  return eval;
}

Rosenbrock::Rosenbrock(std::size_t d) : d_(d) {
  if (d_ < 2) throw InvalidArgument("rosenbrock: dimension must be >= 2");
}

Evaluation Rosenbrock::do_evaluate(const ParamVector& theta, const Batch&) const {
  Evaluation eval{0.0, ParamVector(d_)};
  for (std::size_t i = 0; i + 1 < d_; ++i) {
    const double valley = theta[i + 1] - theta[i] * theta[i];
    const double offset = 1.0 - theta[i];
    eval.loss += 100.0 * valley * valley + offset * offset;
    eval.grad[i] += -400.0 * theta[i] * valley - 2.0 * offset;
    eval.grad[i + 1] += 200.0 * valley;
  }
  return eval;
}

Rastrigin::Rastrigin(std::size_t d) : d_(d) {
  if (d_ < 1) throw InvalidArgument("rastrigin: dimension must be >= 1");
}

Evaluation Rastrigin::do_evaluate(const ParamVector& theta, const Batch&) const {
  constexpr double kAmplitude = 10.0;
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  Evaluation eval{kAmplitude * static_cast<double>(d_), ParamVector(d_)};
  for (std::size_t i = 0; i < d_; ++i) {
    const double x = theta[i];
    eval.loss += x * x - kAmplitude * std::cos(kTwoPi * x);
    eval.grad[i] = 2.0 * x + kAmplitude * kTwoPi * std::sin(kTwoPi * x);
  }
  return eval;
}

std::unique_ptr<Objective> quadratic_bowl(std::vector<double> a, std::vector<double> b) {
  return std::make_unique<QuadraticBowl>(std::move(a), std::move(b));
}

std::unique_ptr<Objective> rosenbrock(std::size_t d) { return std::make_unique<Rosenbrock>(d); }

std::unique_ptr<Objective> rastrigin(std::size_t d) { return std::make_unique<Rastrigin>(d); }

}  // namespace descentlab
