#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "descentlab/objective.hpp"

namespace descentlab {

/// ½ θᵀAθ − bᵀθ with A symmetric positive definite. A is row-major d × d.
/// Construction factorizes A (Cholesky) to validate it and store θ* = A⁻¹b.
class QuadraticBowl final : public Objective {
 public:
  QuadraticBowl(std::vector<double> a, std::vector<double> b);

  std::size_t dim() const noexcept override { return b_.size(); }
  std::string name() const override { return "quadratic_bowl"; }
  std::optional<ParamVector> known_optimum() const override { return optimum_; }

  /// Diagonal convenience constructor: A = diag(diagonal), b given.
  static QuadraticBowl diagonal(std::vector<double> diagonal, std::vector<double> b);

 protected:
  Evaluation do_evaluate(const ParamVector& theta, const Batch& batch) const override;

 private:
  std::vector<double> a_;
  std::vector<double> b_;
  ParamVector optimum_;
};

/// Σ_{i<d−1} 100 (θ_{i+1} − θ_i²)² + (1 − θ_i)². Global minimum at all-ones.
class Rosenbrock final : public Objective {
 public:
  explicit Rosenbrock(std::size_t d);

  std::size_t dim() const noexcept override { return d_; }
  std::string name() const override { return "rosenbrock"; }
  std::optional<ParamVector> known_optimum() const override { return ParamVector(d_, 1.0); }

 protected:
  Evaluation do_evaluate(const ParamVector& theta, const Batch& batch) const override;

 private:
  std::size_t d_;
};

/// 10 d + Σ (θ_i² − 10 cos 2πθ_i). Global minimum at the origin, a local
/// minimum near every integer lattice point.
class Rastrigin final : public Objective {
 public:
  explicit Rastrigin(std::size_t d);

  std::size_t dim() const noexcept override { return d_; }
  std::string name() const override { return "rastrigin"; }
  std::optional<ParamVector> known_optimum() const override { return ParamVector(d_, 0.0); }

 protected:
  Evaluation do_evaluate(const ParamVector& theta, const Batch& batch) const override;

 private:
  std::size_t d_;
};

std::unique_ptr<Objective> quadratic_bowl(std::vector<double> a, std::vector<double> b);
std::unique_ptr<Objective> rosenbrock(std::size_t d);
std::unique_ptr<Objective> rastrigin(std::size_t d);

}  // namespace descentlab
