#include "descentlab/rng.hpp"

#include <cmath>
#include <numbers>

namespace descentlab {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
  return (x << k) | (x >> (64 - k));
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  std::uint64_t z = x + kGolden;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Prng::Prng(std::uint64_t seed) noexcept : seed_(seed) {
  std::uint64_t x = seed;
  for (auto& word : s_) {
    word = splitmix64(x);
    x += kGolden;
  }
  if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
}

std::uint64_t Prng::derive_seed(std::uint64_t master_seed, std::uint64_t stream) noexcept {
  // Two rounds so that nearby (seed, stream) pairs land far apart.
  return splitmix64(splitmix64(master_seed) ^ splitmix64(stream * kGolden + 0x632BE59BD9B4E019ULL));
}

Prng Prng::derive(std::uint64_t master_seed, std::uint64_t stream) noexcept {
  return Prng(derive_seed(master_seed, stream));
}

std::uint64_t Prng::next_u64() noexcept {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Prng::uniform01() noexcept {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t Prng::uniform_index(std::uint64_t bound) noexcept {
  // Rejection on the low end removes modulo bias.
  const std::uint64_t threshold = (0 - bound) % bound;
  std::uint64_t x = next_u64();
  while (x < threshold) x = next_u64();
  return x % bound;
}

double Prng::normal() noexcept {
  if (spare_normal_) {
    const double z = *spare_normal_;
    spare_normal_.reset();
    return z;
  }
  // u1 in (0, 1] keeps the log finite.
  const double u1 = 1.0 - uniform01();
  const double u2 = uniform01();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_normal_ = radius * std::sin(angle);
  return radius * std::cos(angle);
}

}  // namespace descentlab
