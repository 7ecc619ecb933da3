#include "srk/synth.hpp"

#include <string>
#include <utility>
#include <vector>

#include "srk/errors.hpp"

namespace srk {

SyntheticProblem generate_problem(std::size_t m, std::size_t n, std::size_t l,
                                  std::size_t k, SeededRng& rng) {
  if (m == 0 || n == 0 || l == 0) {
    throw DimensionError("generate_problem: m, n and L must be >= 1");
  }
  if (k < 1 || k > n) {
    throw InvalidSparsityError("generate_problem: need 1 <= K <= n, got K = " +
                               std::to_string(k));
  }

  std::vector<double> a(m * n);
  for (double& v : a) v = rng.normal();

  SupportSet support = sample_support(n, k, rng);

  DenseMatrix x(n, l);
  for (std::size_t row : support) {
    for (std::size_t c = 0; c < l; ++c) {
      double v = 0.0;
      while (v == 0.0) v = rng.normal();
      x(row, c) = v;
    }
  }

  DenseMatrix am(m, n, std::move(a));
  DenseMatrix b = matmul(am, x);
  return {std::move(am), std::move(x), std::move(b), std::move(support),
          rng.seed()};
}

}  // namespace srk
