#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "srk/linalg.hpp"
#include "srk/support_set.hpp"

namespace srk {

/// Seeded pseudo-random stream.
///
/// Engine: std::mt19937_64 seeded with the 64-bit seed, whose output sequence
/// is fixed by the C++ standard. The distributions below are written out
/// explicitly (not taken from <random>) so draws are identical across
/// standard library implementations:
///
///   uniform()       (next >> 11) * 2^-53, in [0, 1)
///   uniform_index() Lemire multiply-shift with rejection, unbiased
///   normal()        Box-Muller cosine branch, two uniforms per draw
///
/// Single owner; not shareable across threads.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t next_u64() { return engine_(); }
  double uniform();
  /// Uniform integer in [0, bound). bound must be > 0.
  std::size_t uniform_index(std::size_t bound);
  /// Standard normal N(0, 1).
  double normal();

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

/// SplitMix64 finalizer; a bijective avalanche mix of one 64-bit word.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Seed for one independent stream: base + hash(keys...). Stable across
/// platforms and independent of the order in which streams are created.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t k0,
                          std::uint64_t k1 = 0, std::uint64_t k2 = 0,
                          std::uint64_t k3 = 0) noexcept;

/// Row selection with probability ||a_i||^2 / ||A||_F^2 by inverse CDF.
class RowSampler {
 public:
  /// Throws DegenerateDistributionError when A is all zero.
  explicit RowSampler(const DenseMatrix& a);

  std::size_t num_rows() const noexcept { return cumulative_.size(); }
  /// Normalized prefix sums; the last entry is exactly 1.
  const std::vector<double>& cumulative() const noexcept { return cumulative_; }
  double probability(std::size_t i) const noexcept;

  /// Smallest i with u < cumulative[i], for u in [0, 1). Zero-mass rows
  /// are never returned.
  std::size_t index_for(double u) const noexcept;

  std::size_t sample(SeededRng& rng) const { return index_for(rng.uniform()); }

 private:
  std::vector<double> cumulative_;
};

inline RowSampler build_row_sampler(const DenseMatrix& a) { return RowSampler(a); }

inline std::size_t sample_row(const RowSampler& s, SeededRng& rng) {
  return s.sample(rng);
}

/// k distinct indices drawn uniformly from {0..n-1}, sorted. Partial
/// Fisher-Yates. Throws InvalidSparsityError unless 1 <= k <= n.
SupportSet sample_support(std::size_t n, std::size_t k, SeededRng& rng);

}  // namespace srk
