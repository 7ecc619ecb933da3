#include <doctest.h>

#include <cmath>

#include "srk/errors.hpp"
#include "srk/synth.hpp"

using namespace srk;

TEST_CASE("generated problems are consistent and row-sparse") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const SyntheticProblem p = generate_problem(30, 40, 3, 6, seed);
    CHECK(p.seed == seed);
    REQUIRE(p.a.rows() == 30);
    REQUIRE(p.a.cols() == 40);
    REQUIRE(p.x_true.rows() == 40);
    REQUIRE(p.x_true.cols() == 3);
    REQUIRE(p.b.rows() == 30);
    REQUIRE(p.b.cols() == 3);
    CHECK(p.true_support.size() == 6);

    for (std::size_t i = 0; i < 40; ++i) {
      for (std::size_t c = 0; c < 3; ++c) {
        if (p.true_support.contains(i))
          CHECK(p.x_true(i, c) != 0.0);
        else
          CHECK(p.x_true(i, c) == 0.0);
      }
    }

    // B = A X, checked by an explicit loop over the support only.
    for (std::size_t r = 0; r < 30; ++r)
      for (std::size_t c = 0; c < 3; ++c) {
        double s = 0.0;
        for (std::size_t k : p.true_support) s += p.a(r, k) * p.x_true(k, c);
        CHECK(p.b(r, c) == doctest::Approx(s).epsilon(1e-12));
      }
  }
}

TEST_CASE("generation is reproducible per seed") {
  const SyntheticProblem a = generate_problem(10, 12, 2, 3, std::uint64_t{42});
  const SyntheticProblem b = generate_problem(10, 12, 2, 3, std::uint64_t{42});
  const SyntheticProblem c = generate_problem(10, 12, 2, 3, std::uint64_t{43});
  CHECK(a.a == b.a);
  CHECK(a.x_true == b.x_true);
  CHECK(a.b == b.b);
  CHECK(a.true_support == b.true_support);
  CHECK(a.a != c.a);
}

TEST_CASE("draw order: A first, then the support, then X") {
  SeededRng rng(5);
  const SyntheticProblem p = generate_problem(4, 6, 2, 2, rng);
  SeededRng replay(5);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 6; ++j) CHECK(p.a(i, j) == replay.normal());
  CHECK(sample_support(6, 2, replay) == p.true_support);
  for (std::size_t k : p.true_support)
    for (std::size_t c = 0; c < 2; ++c) CHECK(p.x_true(k, c) == replay.normal());
}

TEST_CASE("entries look standard normal") {
  const SyntheticProblem p = generate_problem(200, 200, 1, 1, std::uint64_t{7});
  double sum = 0.0, sumsq = 0.0;
  for (double v : p.a.data()) {
    sum += v;
    sumsq += v * v;
  }
  const double n = 40000.0;
  CHECK(std::abs(sum / n) < 0.03);
  CHECK(std::abs(sumsq / n - 1.0) < 0.05);
}

TEST_CASE("argument validation") {
  CHECK_THROWS_AS(generate_problem(0, 5, 1, 1, std::uint64_t{1}), DimensionError);
  CHECK_THROWS_AS(generate_problem(5, 0, 1, 1, std::uint64_t{1}), DimensionError);
  CHECK_THROWS_AS(generate_problem(5, 5, 0, 1, std::uint64_t{1}), DimensionError);
  CHECK_THROWS_AS(generate_problem(5, 5, 1, 0, std::uint64_t{1}), InvalidSparsityError);
  CHECK_THROWS_AS(generate_problem(5, 5, 1, 6, std::uint64_t{1}), InvalidSparsityError);
  CHECK_NOTHROW(generate_problem(5, 5, 1, 5, std::uint64_t{1}));
}
