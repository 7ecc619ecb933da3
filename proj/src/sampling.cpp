#include "srk/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "srk/errors.hpp"

namespace srk {

namespace {
__extension__ using u128 = unsigned __int128;
}  // namespace

SupportSet::SupportSet(std::vector<std::size_t> indices, std::size_t n)
    : indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
  if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end()) {
    throw InvalidSparsityError("SupportSet: duplicate index");
  }
  if (!indices_.empty() && indices_.back() >= n) {
    throw InvalidSparsityError("SupportSet: index " +
                               std::to_string(indices_.back()) +
                               " out of range for n = " + std::to_string(n));
  }
}

SupportSet SupportSet::full(std::size_t n) {
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), std::size_t{0});
  return SupportSet(std::move(all), n);
}

bool SupportSet::contains(std::size_t i) const noexcept {
  return std::binary_search(indices_.begin(), indices_.end(), i);
}

double SeededRng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::size_t SeededRng::uniform_index(std::size_t bound) {
  const std::uint64_t s = bound;
  std::uint64_t x = engine_();
  u128 m = static_cast<u128>(x) * s;
  auto low = static_cast<std::uint64_t>(m);
  if (low < s) {
    const std::uint64_t threshold = (0 - s) % s;
    while (low < threshold) {
      x = engine_();
      m = static_cast<u128>(x) * s;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::size_t>(m >> 64);
}

double SeededRng::normal() {
  // 1 - uniform() lies in (0, 1], so the log is finite.
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t k0, std::uint64_t k1,
                          std::uint64_t k2, std::uint64_t k3) noexcept {
  std::uint64_t h = mix64(k0);
  h = mix64(h ^ k1);
  h = mix64(h ^ k2);
  h = mix64(h ^ k3);
  return base + h;
}

RowSampler::RowSampler(const DenseMatrix& a) {
  const Vector norms = row_norms_sq(a);
  cumulative_.resize(norms.size());
  double total = 0.0;
  for (std::size_t i = 0; i < norms.size(); ++i) {
    total += norms[i];
    cumulative_[i] = total;
  }
  if (!(total > 0.0)) {
    throw DegenerateDistributionError(
        "RowSampler: all rows have zero norm, no sampling distribution");
  }
  for (double& c : cumulative_) c /= total;
}

double RowSampler::probability(std::size_t i) const noexcept {
  return i == 0 ? cumulative_[0] : cumulative_[i] - cumulative_[i - 1];
}

std::size_t RowSampler::index_for(double u) const noexcept {
  // The first entry strictly above u always carries positive mass.
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  if (it == cumulative_.end()) {
    // u >= 1: clamp to the first row where the CDF reaches 1.
    it = std::lower_bound(cumulative_.begin(), cumulative_.end(),
                          cumulative_.back());
  }
  return static_cast<std::size_t>(it - cumulative_.begin());
}

SupportSet sample_support(std::size_t n, std::size_t k, SeededRng& rng) {
  if (k < 1 || k > n) {
    throw InvalidSparsityError("sample_support: need 1 <= K <= n, got K = " +
                               std::to_string(k) + ", n = " +
                               std::to_string(n));
  }
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + rng.uniform_index(n - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  return SupportSet(std::move(pool), n);
}

}  // namespace srk
