#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

namespace descentlab {

enum class Task { Regression, Classification };

/// n feature/label row pairs stored row-major. For classification every label
/// row is one-hot. Immutable after construction.
class Dataset {
 public:
  Dataset(std::vector<double> features, std::vector<double> labels, std::size_t n,
          std::size_t d_x, std::size_t d_y, Task task);

  std::size_t size() const noexcept { return n_; }
  std::size_t feature_dim() const noexcept { return d_x_; }
  std::size_t label_dim() const noexcept { return d_y_; }
  Task task() const noexcept { return task_; }

  std::span<const double> x(std::size_t row) const noexcept {
    return {features_.data() + row * d_x_, d_x_};
  }
  std::span<const double> y(std::size_t row) const noexcept {
    return {labels_.data() + row * d_y_, d_y_};
  }
  /// Index of the 1 in a classification label row.
  std::size_t label_index(std::size_t row) const;

  /// Rows `rows` (in that order) as a new dataset.
  Dataset subset(std::span<const std::size_t> rows) const;

  const std::vector<double>& features() const noexcept { return features_; }
  const std::vector<double>& labels() const noexcept { return labels_; }

 private:
  std::vector<double> features_;
  std::vector<double> labels_;
  std::size_t n_;
  std::size_t d_x_;
  std::size_t d_y_;
  Task task_;
};

/// True iff `row` has exactly one entry equal to 1 and all others equal to 0.
bool is_one_hot(std::span<const double> row) noexcept;

/// Dataset CSV: header `x_0,..,x_{dx-1},y_0,..,y_{dy-1}`, one row per instance,
/// comma separated, '.' decimal point, values written with 17 significant digits.
Dataset load_dataset_csv(const std::filesystem::path& path, Task task);
void save_dataset_csv(const Dataset& data, const std::filesystem::path& path);

}  // namespace descentlab
