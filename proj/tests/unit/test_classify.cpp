#include <doctest.h>

#include <cmath>

#include "srk/classify.hpp"
#include "srk/errors.hpp"
#include "support/class_data.hpp"

using namespace srk;

TEST_CASE("build_dictionary groups classes in first-seen order") {
  const std::vector<LabeledSample> s{
      {7, Vector{1, 0}}, {3, Vector{0, 1}}, {7, Vector{2, 0}}, {3, Vector{0, 2}}, {5, Vector{1, 1}}};
  const ClassDictionary d = build_dictionary(s);
  REQUIRE(d.num_classes() == 3);
  CHECK(d.class_ranges[0] == ClassRange{7, 0, 2});
  CHECK(d.class_ranges[1] == ClassRange{3, 2, 4});
  CHECK(d.class_ranges[2] == ClassRange{5, 4, 5});
  CHECK(d.feature_dim() == 2);
  CHECK(d.max_class_size() == 2);
  CHECK(d.v == DenseMatrix{{1, 2, 0, 0, 1}, {0, 0, 1, 2, 1}});

  CHECK_THROWS_AS(build_dictionary(std::vector<LabeledSample>{}), SpecValidationError);
  const std::vector<LabeledSample> mixed{{0, Vector{1, 2}}, {1, Vector{1}}};
  CHECK_THROWS_AS(build_dictionary(mixed), DimensionError);
}

TEST_CASE("class residuals") {
  const std::vector<LabeledSample> s{{0, Vector{1, 0}}, {1, Vector{0, 1}}};
  const ClassDictionary d = build_dictionary(s);
  const DenseMatrix test{{3}, {4}};
  // alpha = (3, 4): class 0 reconstructs (3, 0), class 1 reconstructs (0, 4).
  const auto r = class_residuals(d, test, DenseMatrix{{3}, {4}});
  REQUIRE(r.size() == 2);
  CHECK(r[0] == doctest::Approx(4.0));
  CHECK(r[1] == doctest::Approx(3.0));
  CHECK_THROWS_AS(class_residuals(d, test, DenseMatrix(3, 1)), DimensionError);
}

TEST_CASE("exact membership is recognised") {
  // Orthogonal class blocks: a test vector built from class 1's columns has
  // zero residual for class 1.
  std::vector<LabeledSample> s;
  for (int c = 0; c < 3; ++c)
    for (int k = 0; k < 2; ++k) {
      std::vector<double> f(6, 0.0);
      f[2 * c + k] = 1.0;
      s.push_back({c, Vector(std::move(f))});
    }
  const ClassDictionary d = build_dictionary(s);
  const Vector test{0, 0, 0.5, -2, 0, 0};
  auto cfg = default_classification_config(d, 1);
  CHECK(cfg.estimated_support == 2);
  CHECK(cfg.sweeps == 20);
  const ClassificationResult r = classify_smv(d, test, cfg);
  CHECK(r.predicted == 1);
  CHECK(r.predicted_index == 1);
  CHECK(r.residuals[1] < 1e-8);
  CHECK(r.alpha.rows() == 6);
  CHECK(r.alpha.cols() == 1);
  CHECK_THROWS_AS(classify_smv(d, Vector{1, 2}, cfg), DimensionError);
}

TEST_CASE("noisy synthetic classes") {
  testgen::Gen g(21);
  const testgen::ClassData data = testgen::make_class_data(g, 5, 6, 40, 0.3);
  const ClassDictionary d = build_dictionary(data.training);
  const SolverConfig cfg = default_classification_config(d, 3);
  std::size_t mmv_hits = 0, vote_hits = 0;
  for (std::size_t t = 0; t < 20; ++t) {
    const std::size_t c = t % 5;
    const DenseMatrix seq = testgen::make_sequence(g, data, c, 4);
    const ClassificationResult m = classify_mmv(d, seq, cfg);
    REQUIRE(m.residuals.size() == 5);
    CHECK(m.alpha.cols() == 4);
    mmv_hits += m.predicted == static_cast<ClassId>(c) ? 1 : 0;
    const FrameVoteResult v = classify_frames_by_vote(d, seq, cfg);
    CHECK(v.frame_predictions.size() == 4);
    vote_hits += v.predicted == static_cast<ClassId>(c) ? 1 : 0;
  }
  CHECK(mmv_hits >= 18);
  CHECK(vote_hits >= 16);

  // Deterministic under a fixed seed.
  const DenseMatrix seq = testgen::make_sequence(g, data, 2, 4);
  const auto a = classify_mmv(d, seq, cfg);
  const auto b = classify_mmv(d, seq, cfg);
  CHECK(a.residuals == b.residuals);
  CHECK(a.alpha == b.alpha);
}

TEST_CASE("vote ties go to the lower class index") {
  // Two frames, each exactly a member of a different class.
  const std::vector<LabeledSample> s{{4, Vector{1, 0}}, {9, Vector{0, 1}}};
  const ClassDictionary d = build_dictionary(s);
  const DenseMatrix frames{{1, 0}, {0, 1}};
  const FrameVoteResult v = classify_frames_by_vote(d, frames, default_classification_config(d));
  CHECK(v.frame_predictions == std::vector<std::size_t>{0, 1});
  CHECK(v.predicted_index == 0);
  CHECK(v.predicted == 4);
}
