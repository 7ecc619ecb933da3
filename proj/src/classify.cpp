#include "srk/classify.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>

#include "srk/errors.hpp"

namespace srk {

std::size_t ClassDictionary::max_class_size() const noexcept {
  std::size_t best = 0;
  for (const auto& r : class_ranges) best = std::max(best, r.size());
  return best;
}

ClassDictionary build_dictionary(std::span<const LabeledSample> samples) {
  if (samples.empty()) {
    throw SpecValidationError("build_dictionary: no training samples");
  }
  const std::size_t dim = samples.front().features.size();
  if (dim == 0) throw DimensionError("build_dictionary: empty feature vector");

  std::vector<ClassId> order;
  std::unordered_map<ClassId, std::vector<const Vector*>> by_class;
  for (const auto& s : samples) {
    if (s.features.size() != dim) {
      throw DimensionError("build_dictionary: feature length " +
                           std::to_string(s.features.size()) + ", expected " +
                           std::to_string(dim));
    }
    auto [it, inserted] = by_class.try_emplace(s.class_id);
    if (inserted) order.push_back(s.class_id);
    it->second.push_back(&s.features);
  }

  ClassDictionary dict{DenseMatrix(dim, samples.size()), {}};
  std::size_t col = 0;
  for (ClassId id : order) {
    const std::size_t begin = col;
    for (const Vector* f : by_class[id]) dict.v.set_col(col++, f->span());
    dict.class_ranges.push_back({id, begin, col});
  }
  return dict;
}

SolverConfig default_classification_config(const ClassDictionary& dict,
                                           std::uint64_t seed) {
  SolverConfig cfg;
  cfg.variant = Variant::SRK_MMV;
  cfg.estimated_support = std::min(dict.max_class_size(), dict.v.cols());
  cfg.sweeps = 20;
  cfg.seed = seed;
  return cfg;
}

std::vector<double> class_residuals(const ClassDictionary& dict,
                                    const DenseMatrix& v_test,
                                    const DenseMatrix& alpha) {
  const DenseMatrix& v = dict.v;
  if (v_test.rows() != v.rows() || alpha.rows() != v.cols() ||
      alpha.cols() != v_test.cols()) {
    throw DimensionError("class_residuals: shape mismatch");
  }
  const std::size_t frames = v_test.cols();
  std::vector<double> out;
  out.reserve(dict.num_classes());
  std::vector<double> recon(frames);
  for (const auto& range : dict.class_ranges) {
    double sq = 0.0;
    for (std::size_t r = 0; r < v.rows(); ++r) {
      std::fill(recon.begin(), recon.end(), 0.0);
      for (std::size_t c = range.begin; c < range.end; ++c) {
        const double vrc = v(r, c);
        auto arow = alpha.row(c);
        for (std::size_t f = 0; f < frames; ++f) recon[f] += vrc * arow[f];
      }
      for (std::size_t f = 0; f < frames; ++f) {
        const double d = v_test(r, f) - recon[f];
        sq += d * d;
      }
    }
    out.push_back(std::sqrt(sq));
  }
  return out;
}

ClassificationResult classify_mmv(const ClassDictionary& dict,
                                  const DenseMatrix& v_test,
                                  const SolverConfig& cfg) {
  if (v_test.rows() != dict.feature_dim()) {
    throw DimensionError("classify: test features have length " +
                         std::to_string(v_test.rows()) + ", dictionary has " +
                         std::to_string(dict.feature_dim()));
  }
  SolveResult sol = solve(dict.v, v_test, cfg);

  ClassificationResult out{class_residuals(dict, v_test, sol.solution), 0, 0,
                           std::move(sol.solution)};
  // min_element keeps the first minimum: ties go to the lower class index.
  out.predicted_index = static_cast<std::size_t>(
      std::min_element(out.residuals.begin(), out.residuals.end()) -
      out.residuals.begin());
  out.predicted = dict.class_ranges[out.predicted_index].class_id;
  return out;
}

ClassificationResult classify_smv(const ClassDictionary& dict,
                                  const Vector& v_test, const SolverConfig& cfg) {
  if (v_test.size() != dict.feature_dim()) {
    throw DimensionError("classify_smv: test vector has length " +
                         std::to_string(v_test.size()) + ", dictionary has " +
                         std::to_string(dict.feature_dim()));
  }
  return classify_mmv(dict, DenseMatrix::column(v_test), cfg);
}

FrameVoteResult classify_frames_by_vote(const ClassDictionary& dict,
                                        const DenseMatrix& v_test,
                                        const SolverConfig& cfg) {
  FrameVoteResult out;
  std::vector<std::size_t> votes(dict.num_classes(), 0);
  for (std::size_t f = 0; f < v_test.cols(); ++f) {
    const auto r = classify_smv(dict, v_test.col(f), cfg);
    out.frame_predictions.push_back(r.predicted_index);
    ++votes[r.predicted_index];
  }
  out.predicted_index = static_cast<std::size_t>(
      std::max_element(votes.begin(), votes.end()) - votes.begin());
  out.predicted = dict.class_ranges[out.predicted_index].class_id;
  return out;
}

}  // namespace srk
