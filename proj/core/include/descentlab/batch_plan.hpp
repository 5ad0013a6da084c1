#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "descentlab/rng.hpp"

namespace descentlab {

/// One epoch's shuffled order split into consecutive mini-batches. All batches
/// have `batch_size` rows except possibly the last, which holds n mod b rows.
class BatchPlan {
 public:
  BatchPlan(std::vector<std::size_t> order, std::size_t batch_size);

  std::size_t batch_size() const noexcept { return batch_size_; }
  std::size_t batch_count() const noexcept { return (order_.size() + batch_size_ - 1) / batch_size_; }
  std::span<const std::size_t> batch(std::size_t index) const;
  const std::vector<std::size_t>& order() const noexcept { return order_; }

 private:
  std::vector<std::size_t> order_;
  std::size_t batch_size_;
};

/// Fisher-Yates permutation of [0, n) drawn from rng.
std::vector<std::size_t> shuffled_indices(std::size_t n, Prng& rng);

/// Uniform shuffle of [0, n) partitioned into ceil(n / b) batches.
BatchPlan shuffle_and_partition(std::size_t n, std::size_t batch_size, Prng& rng);

}  // namespace descentlab
