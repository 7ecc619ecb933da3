#pragma once

#include <cstdint>
#include <span>

#include "srk/linalg.hpp"

namespace srk {

/// Threshold below which a trial counts as recovered.
inline constexpr double kDefaultSuccessThreshold = 1e-3;

struct RecoveryOutcome {
  double relative_error = 0.0;
  bool success = false;
  std::uint64_t dot_products = 0;
};

/// ||X_true - X_hat||_F^2 / ||X_true||_F^2 (squared norms on both sides).
/// Throws DimensionError on a shape mismatch and DegenerateMetricError when
/// X_true is zero.
double relative_error(const DenseMatrix& x_true, const DenseMatrix& x_hat);

/// Strict: err < threshold. Throws InvalidValueError unless threshold > 0.
bool is_success(double err, double threshold);

RecoveryOutcome make_outcome(double err, double threshold,
                             std::uint64_t dot_products);

/// Percentage of successful outcomes, in [0, 100]. Throws
/// DegenerateMetricError on an empty list.
double recovery_rate(std::span<const RecoveryOutcome> outcomes);

}  // namespace srk
