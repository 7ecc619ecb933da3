#pragma once

#include <cstddef>
#include <cstdint>

#include "srk/linalg.hpp"
#include "srk/sampling.hpp"
#include "srk/support_set.hpp"

namespace srk {

/// Gaussian sensing matrix with a row-sparse, common-support source matrix.
struct SyntheticProblem {
  DenseMatrix a;       // m x n
  DenseMatrix x_true;  // n x L
  DenseMatrix b;       // m x L, equal to a * x_true
  SupportSet true_support;
  std::uint64_t seed = 0;
};

/// Draw order from `rng`: A row by row, then the support, then the nonzero
/// rows of X (ascending support index, columns left to right). All entries
/// are N(0, 1); a nonzero of X that comes out exactly 0.0 is redrawn.
///
/// Throws DimensionError if m, n or L is zero and InvalidSparsityError
/// unless 1 <= K <= n.
SyntheticProblem generate_problem(std::size_t m, std::size_t n, std::size_t l,
                                  std::size_t k, SeededRng& rng);

inline SyntheticProblem generate_problem(std::size_t m, std::size_t n,
                                         std::size_t l, std::size_t k,
                                         std::uint64_t seed) {
  SeededRng rng(seed);
  SyntheticProblem p = generate_problem(m, n, l, k, rng);
  p.seed = seed;
  return p;
}

}  // namespace srk
