#include "descentlab/synthetic.hpp"

#include <cmath>
#include <vector>

#include "descentlab/error.hpp"
#include "descentlab/rng.hpp"

namespace descentlab {

Dataset gaussian_blobs(const BlobsSpec& spec) {
  if (spec.n == 0 || spec.d_x == 0) throw InvalidArgument("blobs: n and d_x must be >= 1");
  if (spec.classes < 2) throw InvalidArgument("blobs: needs at least two classes");
  if (!(spec.noise >= 0.0) || !(spec.separation >= 0.0)) {
    throw InvalidArgument("blobs: noise and separation must be non-negative");
  }
  Prng rng(spec.seed);
  std::vector<double> centers(spec.classes * spec.d_x);
  for (double& c : centers) c = spec.separation * rng.normal();

  std::vector<double> features(spec.n * spec.d_x);
  std::vector<double> labels(spec.n * spec.classes, 0.0);
  for (std::size_t i = 0; i < spec.n; ++i) {
    const std::size_t k = i % spec.classes;
    for (std::size_t j = 0; j < spec.d_x; ++j) {
      features[i * spec.d_x + j] = centers[k * spec.d_x + j] + spec.noise * rng.normal();
    }
    labels[i * spec.classes + k] = 1.0;
  }
  return Dataset(std::move(features), std::move(labels), spec.n, spec.d_x, spec.classes,
                 Task::Classification);
}

Dataset linear_with_noise(const LinearSpec& spec) {
  if (spec.n == 0 || spec.d_x == 0 || spec.d_y == 0) {
    throw InvalidArgument("linear: n, d_x and d_y must be >= 1");
  }
  if (!(spec.noise >= 0.0)) throw InvalidArgument("linear: noise must be non-negative");
  Prng rng(spec.seed);
  std::vector<double> weights(spec.d_y * spec.d_x);
  std::vector<double> offsets(spec.d_y);
  for (double& w : weights) w = rng.normal();
  for (double& c : offsets) c = rng.normal();

  std::vector<double> features(spec.n * spec.d_x);
  std::vector<double> labels(spec.n * spec.d_y);
  for (std::size_t i = 0; i < spec.n; ++i) {
    double* x = &features[i * spec.d_x];
    for (std::size_t j = 0; j < spec.d_x; ++j) x[j] = rng.normal();
    for (std::size_t r = 0; r < spec.d_y; ++r) {
      double acc = offsets[r];
      for (std::size_t j = 0; j < spec.d_x; ++j) acc += weights[r * spec.d_x + j] * x[j];
      labels[i * spec.d_y + r] = acc + spec.noise * rng.normal();
    }
  }
  return Dataset(std::move(features), std::move(labels), spec.n, spec.d_x, spec.d_y,
                 Task::Regression);
}

}  // namespace descentlab
