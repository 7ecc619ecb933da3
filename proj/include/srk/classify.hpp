#pragma once

// Sparse-representation classification: express a test sample (or a
// sequence of test frames) as a sparse combination of all training samples,
// then pick the class whose own block of coefficients reconstructs it best.

#include <cstddef>
#include <span>
#include <vector>

#include "srk/linalg.hpp"
#include "srk/solvers.hpp"

namespace srk {

using ClassId = int;

struct LabeledSample {
  ClassId class_id;
  Vector features;
};

/// Contiguous block [begin, end) of dictionary columns owned by one class.
struct ClassRange {
  ClassId class_id;
  std::size_t begin;
  std::size_t end;

  std::size_t size() const noexcept { return end - begin; }
  friend bool operator==(const ClassRange&, const ClassRange&) = default;
};

struct ClassDictionary {
  DenseMatrix v;  // feature dim x total training samples
  std::vector<ClassRange> class_ranges;

  std::size_t num_classes() const noexcept { return class_ranges.size(); }
  std::size_t feature_dim() const noexcept { return v.rows(); }
  /// Largest number of columns owned by any one class.
  std::size_t max_class_size() const noexcept;
};

struct ClassificationResult {
  std::vector<double> residuals;  // one per class_ranges entry
  std::size_t predicted_index = 0;
  ClassId predicted = 0;
  DenseMatrix alpha;  // coefficients, total samples x frames
};

/// Stacks samples as columns, grouped contiguously by class in first-seen
/// class order (within a class, input order). Throws SpecValidationError on
/// empty input and DimensionError on mixed feature lengths.
ClassDictionary build_dictionary(std::span<const LabeledSample> samples);

/// SRK-MMV with k-hat = largest class size and 20 sweeps.
SolverConfig default_classification_config(const ClassDictionary& dict,
                                           std::uint64_t seed = 0);

/// ||V_test - V_i alpha_i||_F for each class block i.
std::vector<double> class_residuals(const ClassDictionary& dict,
                                    const DenseMatrix& v_test,
                                    const DenseMatrix& alpha);

/// Single test vector; alpha comes from solve() with `cfg`.
ClassificationResult classify_smv(const ClassDictionary& dict,
                                  const Vector& v_test, const SolverConfig& cfg);

/// Test frames as columns of `v_test`, solved jointly so that all frames
/// share one row support of alpha.
ClassificationResult classify_mmv(const ClassDictionary& dict,
                                  const DenseMatrix& v_test,
                                  const SolverConfig& cfg);

struct FrameVoteResult {
  std::vector<std::size_t> frame_predictions;  // class_ranges index per frame
  std::size_t predicted_index = 0;
  ClassId predicted = 0;
};

/// Classifies every column of `v_test` on its own with classify_smv and takes
/// the most frequent class; ties go to the lower class index.
FrameVoteResult classify_frames_by_vote(const ClassDictionary& dict,
                                        const DenseMatrix& v_test,
                                        const SolverConfig& cfg);

}  // namespace srk
