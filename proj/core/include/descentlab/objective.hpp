#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>

#include "descentlab/dataset.hpp"
#include "descentlab/param_vector.hpp"

namespace descentlab {

/// The slice of data an objective is evaluated on. Analytic objectives take
/// the empty batch; supervised ones need a dataset plus either explicit rows
/// or "all rows".
class Batch {
 public:
  Batch() = default;
  Batch(const Dataset& data, std::span<const std::size_t> rows) : data_(&data), rows_(rows) {}

  static Batch all(const Dataset& data) {
    Batch batch;
    batch.data_ = &data;
    batch.all_rows_ = true;
    return batch;
  }

  const Dataset* data() const noexcept { return data_; }
  bool has_data() const noexcept { return data_ != nullptr; }
  std::size_t size() const noexcept {
    if (data_ == nullptr) return 0;
    return all_rows_ ? data_->size() : rows_.size();
  }
  std::size_t row(std::size_t i) const noexcept { return all_rows_ ? i : rows_[i]; }

 private:
  const Dataset* data_ = nullptr;
  std::span<const std::size_t> rows_;
  bool all_rows_ = false;
};

struct Evaluation {
  double loss = 0.0;
  ParamVector grad;
};

/// Gradient oracle: loss and ∇_θ loss at θ for a batch.
///
/// Implementations are immutable after construction and `evaluate` is
/// reentrant. The public entry points validate θ's length and finiteness and
/// the finiteness of what the implementation returns.
class Objective {
 public:
  virtual ~Objective() = default;

  virtual std::size_t dim() const noexcept = 0;
  virtual std::string name() const = 0;
  /// True for objectives that read a dataset through the batch.
  virtual bool needs_data() const noexcept { return false; }
  virtual std::optional<ParamVector> known_optimum() const { return std::nullopt; }

  Evaluation evaluate(const ParamVector& theta, const Batch& batch = {}) const;
  double value(const ParamVector& theta, const Batch& batch = {}) const;

 protected:
  virtual Evaluation do_evaluate(const ParamVector& theta, const Batch& batch) const = 0;
  /// Loss-only path; defaults to the full evaluation.
  virtual double do_value(const ParamVector& theta, const Batch& batch) const {
    return do_evaluate(theta, batch).loss;
  }

 private:
  void check_input(const ParamVector& theta, const Batch& batch) const;
};

}  // namespace descentlab
