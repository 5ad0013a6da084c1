#include "descentlab/batch_plan.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

#include "descentlab/error.hpp"

namespace descentlab {

BatchPlan::BatchPlan(std::vector<std::size_t> order, std::size_t batch_size)
    : order_(std::move(order)), batch_size_(batch_size) {
  if (order_.empty()) throw InvalidArgument("batch plan: empty order");
  if (batch_size_ == 0 || batch_size_ > order_.size()) {
    throw InvalidArgument("batch plan: batch size must be in [1, n]");
  }
}

std::span<const std::size_t> BatchPlan::batch(std::size_t index) const {
  if (index >= batch_count()) throw InvalidArgument("batch plan: batch index out of range");
  const std::size_t begin = index * batch_size_;
  const std::size_t end = std::min(begin + batch_size_, order_.size());
  return std::span<const std::size_t>(order_).subspan(begin, end - begin);
}

std::vector<std::size_t> shuffled_indices(std::size_t n, Prng& rng) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t i = n; i > 1; --i) {
    const std::size_t j = rng.uniform_index(i);
    std::swap(order[i - 1], order[j]);
  }
  return order;
}

BatchPlan shuffle_and_partition(std::size_t n, std::size_t batch_size, Prng& rng) {
  if (n == 0) throw InvalidArgument("shuffle_and_partition: n must be >= 1");
  if (batch_size == 0 || batch_size > n) {
    throw InvalidArgument("shuffle_and_partition: batch size must be in [1, n]");
  }
  return BatchPlan(shuffled_indices(n, rng), batch_size);
}

}  // namespace descentlab
