#include "descentlab/dataset.hpp"

#include <fstream>
#include <string>

#include "descentlab/csv.hpp"
#include "descentlab/error.hpp"
#include "descentlab/param_vector.hpp"

namespace descentlab {

bool is_one_hot(std::span<const double> row) noexcept {
  std::size_t ones = 0;
  for (double v : row) {
    if (v == 1.0) {
      ++ones;
    } else if (v != 0.0) {
      return false;
    }
  }
  return ones == 1;
}

Dataset::Dataset(std::vector<double> features, std::vector<double> labels, std::size_t n,
                 std::size_t d_x, std::size_t d_y, Task task)
    : features_(std::move(features)),
      labels_(std::move(labels)),
      n_(n),
      d_x_(d_x),
      d_y_(d_y),
      task_(task) {
  if (n_ == 0) throw InvalidArgument("dataset: needs at least one row");
  if (d_x_ == 0 || d_y_ == 0) throw InvalidArgument("dataset: feature and label dims must be >= 1");
  if (features_.size() != n_ * d_x_) throw InvalidArgument("dataset: feature matrix is not n x d_x");
  if (labels_.size() != n_ * d_y_) throw InvalidArgument("dataset: label matrix is not n x d_y");
  require_finite(features_, "dataset features");
  require_finite(labels_, "dataset labels");
  if (task_ == Task::Classification) {
    for (std::size_t i = 0; i < n_; ++i) {
      if (!is_one_hot(y(i))) {
        throw InvalidArgument("dataset: label row " + std::to_string(i) + " is not one-hot");
      }
    }
  }
}

std::size_t Dataset::label_index(std::size_t row) const {
  const auto label = y(row);
  for (std::size_t j = 0; j < label.size(); ++j) {
    if (label[j] == 1.0) return j;
  }
  throw InvalidArgument("dataset: label row " + std::to_string(row) + " has no class index");
}

Dataset Dataset::subset(std::span<const std::size_t> rows) const {
  std::vector<double> features;
  std::vector<double> labels;
  features.reserve(rows.size() * d_x_);
  labels.reserve(rows.size() * d_y_);
  for (std::size_t r : rows) {
    if (r >= n_) throw InvalidArgument("dataset: subset row out of range");
    const auto xr = x(r);
    const auto yr = y(r);
    features.insert(features.end(), xr.begin(), xr.end());
    labels.insert(labels.end(), yr.begin(), yr.end());
  }
  return Dataset(std::move(features), std::move(labels), rows.size(), d_x_, d_y_, task_);
}

Dataset load_dataset_csv(const std::filesystem::path& path, Task task) {
  const CsvTable table = read_csv(path);
  std::size_t d_x = 0;
  std::size_t d_y = 0;
  for (const auto& name : table.header) {
    if (name == "x_" + std::to_string(d_x) && d_y == 0) {
      ++d_x;
    } else if (name == "y_" + std::to_string(d_y)) {
      ++d_y;
    } else {
      throw InvalidArgument("dataset csv: unexpected column '" + name +
                            "' (expected x_0..x_{dx-1} then y_0..y_{dy-1})");
    }
  }
  const std::size_t n = table.rows.size();
  std::vector<double> features;
  std::vector<double> labels;
  features.reserve(n * d_x);
  labels.reserve(n * d_y);
  for (const auto& row : table.rows) {
    for (std::size_t j = 0; j < d_x; ++j) features.push_back(parse_double(row[j]));
    for (std::size_t j = 0; j < d_y; ++j) labels.push_back(parse_double(row[d_x + j]));
  }
  return Dataset(std::move(features), std::move(labels), n, d_x, d_y, task);
}

void save_dataset_csv(const Dataset& data, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("dataset csv: cannot write " + path.string());
  for (std::size_t j = 0; j < data.feature_dim(); ++j) out << (j ? "," : "") << "x_" << j;
  for (std::size_t j = 0; j < data.label_dim(); ++j) out << ",y_" << j;
  out << '\n';
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto xr = data.x(i);
    const auto yr = data.y(i);
    for (std::size_t j = 0; j < xr.size(); ++j) out << (j ? "," : "") << format_double(xr[j]);
    for (double v : yr) out << ',' << format_double(v);
    out << '\n';
  }
}

}  // namespace descentlab
