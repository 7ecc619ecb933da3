#include <doctest.h>

#include <cmath>
#include <vector>

#include "srk/errors.hpp"
#include "srk/metrics.hpp"
#include "support/generators.hpp"

using namespace srk;

TEST_CASE("relative_error") {
  const DenseMatrix x{{1, 2}, {0, 0}, {2, 0}};
  CHECK(relative_error(x, x) == 0.0);
  CHECK(relative_error(x, DenseMatrix(3, 2)) == 1.0);
  // Squared on both sides: ||(0.1, 0.2, 0.2)||^2 / ||x||^2 = 0.09 / 9.
  const DenseMatrix y{{0.9, 1.8}, {0, 0}, {1.8, 0}};
  CHECK(relative_error(x, y) == doctest::Approx(0.01).epsilon(1e-12));

  CHECK_THROWS_AS(relative_error(DenseMatrix(3, 2), x), DegenerateMetricError);
  CHECK_THROWS_AS(relative_error(x, DenseMatrix(2, 3)), DimensionError);

  testgen::Gen g(1);
  for (int rep = 0; rep < 30; ++rep) {
    const DenseMatrix a = g.matrix(g.count(1, 10), g.count(1, 4));
    const DenseMatrix b = g.matrix(a.rows(), a.cols());
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) {
        num += (a(i, j) - b(i, j)) * (a(i, j) - b(i, j));
        den += a(i, j) * a(i, j);
      }
    CHECK(relative_error(a, b) == doctest::Approx(num / den).epsilon(1e-12));
    CHECK(relative_error(a, b) >= 0.0);
  }
}

TEST_CASE("success is strict") {
  CHECK(is_success(0.0, 1e-3));
  CHECK(is_success(9.99e-4, 1e-3));
  CHECK_FALSE(is_success(1e-3, 1e-3));
  CHECK_FALSE(is_success(0.5, 1e-3));
  CHECK_THROWS_AS(is_success(0.1, 0.0), InvalidValueError);
  CHECK_THROWS_AS(is_success(0.1, -1.0), InvalidValueError);
  CHECK_THROWS_AS(is_success(0.1, NAN), InvalidValueError);
}

TEST_CASE("recovery_rate") {
  const std::vector<RecoveryOutcome> o{make_outcome(1e-5, 1e-3, 10),
                                       make_outcome(2e-3, 1e-3, 10),
                                       make_outcome(1e-3, 1e-3, 10),
                                       make_outcome(0.0, 1e-3, 10)};
  CHECK(o[0].success);
  CHECK_FALSE(o[2].success);
  CHECK(o[1].dot_products == 10);
  CHECK(recovery_rate(o) == 50.0);
  CHECK(recovery_rate(std::span(o).first(1)) == 100.0);
  CHECK(recovery_rate(std::span(o).subspan(1, 2)) == 0.0);
  CHECK_THROWS_AS(recovery_rate(std::span<const RecoveryOutcome>{}), DegenerateMetricError);
}
