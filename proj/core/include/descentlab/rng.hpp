#pragma once

#include <array>
#include <cstdint>
#include <optional>

namespace descentlab {

/// SplitMix64 finalizer. Used for seeding and stream derivation.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seeded pseudo-random generator with a fixed, documented algorithm so that
/// traces are bit-identical across platforms and standard libraries.
///
/// Engine: xoshiro256** (Blackman & Vigna). State is filled by iterating
/// SplitMix64 from the seed. Uniform doubles take the top 53 bits. Normals use
/// the Box-Muller transform and cache the second variate of each pair.
///
/// A Prng is single-owner. Parallel users take child streams from `derive`.
class Prng {
 public:
  explicit Prng(std::uint64_t seed) noexcept;

  /// Child generator for stream `stream` of `master_seed`. Distinct
  /// (master_seed, stream) pairs give statistically independent sequences.
  static Prng derive(std::uint64_t master_seed, std::uint64_t stream) noexcept;

  /// Seed for stream `stream` of `master_seed`; derive(m, s) == Prng(derive_seed(m, s)).
  static std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t stream) noexcept;

  std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t next_u64() noexcept;
  /// Uniform on [0, 1) with 53 bits of resolution.
  double uniform01() noexcept;
  /// Uniform integer in [0, bound). bound must be >= 1.
  std::uint64_t uniform_index(std::uint64_t bound) noexcept;
  /// Standard normal N(0, 1).
  double normal() noexcept;

 private:
  std::uint64_t seed_;
  std::array<std::uint64_t, 4> s_{};
  std::optional<double> spare_normal_;
};

}  // namespace descentlab
