#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "descentlab/rng.hpp"

namespace descentlab {

/// Flat real-valued parameter vector θ of fixed dimension.
///
/// Arithmetic helpers below check that operands have equal length and that
/// every produced entry is finite; a violation throws NumericError carrying
/// the offending index. Element access itself is unchecked.
class ParamVector {
 public:
  ParamVector() = default;
  explicit ParamVector(std::size_t dim, double fill = 0.0) : values_(dim, fill) {}
  ParamVector(std::initializer_list<double> values) : values_(values) {}
  explicit ParamVector(std::vector<double> values) : values_(std::move(values)) {}

  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }

  double& operator[](std::size_t i) noexcept { return values_[i]; }
  double operator[](std::size_t i) const noexcept { return values_[i]; }

  std::span<double> span() noexcept { return values_; }
  std::span<const double> span() const noexcept { return values_; }
  const std::vector<double>& values() const noexcept { return values_; }

  auto begin() noexcept { return values_.begin(); }
  auto end() noexcept { return values_.end(); }
  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }

  bool operator==(const ParamVector&) const = default;

 private:
  std::vector<double> values_;
};

ParamVector add(const ParamVector& a, const ParamVector& b);
ParamVector sub(const ParamVector& a, const ParamVector& b);
ParamVector scale(const ParamVector& a, double factor);
/// Elementwise product a ⊙ b.
ParamVector hadamard(const ParamVector& a, const ParamVector& b);
ParamVector elementwise_sqrt(const ParamVector& a);
/// Elementwise a / b. Callers add their smoothing term to b first.
ParamVector elementwise_divide(const ParamVector& a, const ParamVector& b);
double dot(const ParamVector& a, const ParamVector& b);
double norm(const ParamVector& a);
double norm(std::span<const double> a);

/// Throws NumericError naming the first non-finite entry.
void require_finite(std::span<const double> values, const char* what);
/// Throws InvalidArgument when the lengths differ.
void require_same_size(std::size_t a, std::size_t b, const char* what);

/// d samples of N(0, sigma^2) drawn from rng.
ParamVector init_normal(std::size_t dim, double sigma, Prng& rng);

}  // namespace descentlab
