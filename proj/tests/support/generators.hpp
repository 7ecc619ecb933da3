#pragma once

// Hand-rolled generators for property-style tests. Uses <random> directly so
// test inputs never share a code path with the library's own sampling.

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "srk/linalg.hpp"

namespace testgen {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : eng_(seed) {}

  std::size_t count(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(eng_);
  }

  double real(double lo = -1.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(eng_);
  }

  double gauss() { return normal_(eng_); }

  srk::Vector vector(std::size_t n) {
    std::vector<double> v(n);
    for (double& e : v) e = gauss();
    return srk::Vector(std::move(v));
  }

  srk::DenseMatrix matrix(std::size_t r, std::size_t c) {
    std::vector<double> v(r * c);
    for (double& e : v) e = gauss();
    return srk::DenseMatrix(r, c, std::move(v));
  }

  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace testgen
