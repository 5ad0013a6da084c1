#pragma once

#include <cstddef>
#include <cstdint>

#include "descentlab/dataset.hpp"

namespace descentlab {

/// Gaussian blobs: `classes` centers drawn from N(0, separation²) per
/// coordinate, row i belongs to class i mod classes, and its features are the
/// center plus N(0, noise²) noise. Labels are one-hot.
struct BlobsSpec {
  std::size_t n = 300;
  std::size_t d_x = 2;
  std::size_t classes = 3;
  double separation = 3.0;
  double noise = 1.0;
  std::uint64_t seed = 0;
};

/// y = W x + c + N(0, noise²) with W, c, x all standard normal.
struct LinearSpec {
  std::size_t n = 300;
  std::size_t d_x = 3;
  std::size_t d_y = 1;
  double noise = 0.1;
  std::uint64_t seed = 0;
};

Dataset gaussian_blobs(const BlobsSpec& spec);
Dataset linear_with_noise(const LinearSpec& spec);

}  // namespace descentlab
