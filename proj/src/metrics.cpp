#include "srk/metrics.hpp"

#include "srk/errors.hpp"

namespace srk {

double relative_error(const DenseMatrix& x_true, const DenseMatrix& x_hat) {
  const double denom = frobenius_norm_sq(x_true);
  if (!(denom > 0.0)) {
    throw DegenerateMetricError("relative_error: ground truth is zero");
  }
  return frobenius_norm_sq(subtract(x_true, x_hat)) / denom;
}

bool is_success(double err, double threshold) {
  if (!(threshold > 0.0)) {
    throw InvalidValueError("is_success: threshold must be positive");
  }
  return err < threshold;
}

RecoveryOutcome make_outcome(double err, double threshold,
                             std::uint64_t dot_products) {
  return {err, is_success(err, threshold), dot_products};
}

double recovery_rate(std::span<const RecoveryOutcome> outcomes) {
  if (outcomes.empty()) {
    throw DegenerateMetricError("recovery_rate: no outcomes");
  }
  std::size_t ok = 0;
  for (const auto& o : outcomes) ok += o.success ? 1 : 0;
  return 100.0 * static_cast<double>(ok) / static_cast<double>(outcomes.size());
}

}  // namespace srk
