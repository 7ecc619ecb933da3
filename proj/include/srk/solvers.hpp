#pragma once

// Kaczmarz family: cyclic, randomized (RK), sparse randomized (SRK) and the
// joint-sparse multiple-measurement extension (SRK-MMV).

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "srk/linalg.hpp"
#include "srk/support_set.hpp"

namespace srk {

enum class Variant { Cyclic, RK, SRK, SRK_MMV };

std::string_view to_string(Variant v) noexcept;
/// Accepts "cyclic", "rk", "srk", "srk-mmv" (also "srk_mmv"). Throws
/// ValidationError on anything else.
Variant parse_variant(std::string_view name);

/// Per-coordinate weights at iteration j: 1 on the support estimate,
/// 1/sqrt(j) elsewhere.
struct WeightVector {
  Vector weights;
  std::size_t iteration = 1;
};

struct SolverConfig {
  Variant variant = Variant::SRK_MMV;
  /// Estimated support size k-hat; ignored by Cyclic and RK.
  std::size_t estimated_support = 1;
  /// J; the solver runs sweeps * rows(A) iterations.
  std::size_t sweeps = 1;
  std::uint64_t seed = 0;
  /// Record the relative residual every this many iterations (0: never).
  std::size_t trace_every = 0;
};

struct TracePoint {
  std::size_t iteration;
  double relative_residual;

  friend bool operator==(const TracePoint&, const TracePoint&) = default;
};

struct SolveResult {
  DenseMatrix solution;  // n x L
  std::size_t iterations_run = 0;
  /// Length-n inner products performed, for comparisons at equal work.
  std::uint64_t dot_products = 0;
  std::vector<TracePoint> trace;

  friend bool operator==(const SolveResult&, const SolveResult&) = default;
};

/// Called after iteration `iteration` (1-based) whenever trace_every divides
/// it, with the current n x L iterate. Observation never alters the iterates.
using IterateObserver =
    std::function<void(std::size_t iteration, const DenseMatrix& iterate)>;

/// Orthogonal projection of x onto {u : <a, u> = b}. Throws ZeroRowError
/// when a is zero and DimensionError on length mismatch.
Vector kaczmarz_step(std::span<const double> x, std::span<const double> a,
                     double b);

/// Projection along the weighted row w .* a onto {u : <w .* a, u> = b}.
Vector weighted_kaczmarz_step(std::span<const double> x,
                              std::span<const double> a, double b,
                              const WeightVector& w);

/// Indices of the `size` largest |x_k|, lower index first on ties.
SupportSet estimate_support_smv(std::span<const double> x, std::size_t size);

/// Indices of the `size` rows of X with the largest l2 norm, lower index
/// first on ties.
SupportSet estimate_support_mmv(const DenseMatrix& x, std::size_t size);

WeightVector build_weight_vector(const SupportSet& s, std::size_t n,
                                 std::size_t j);

/// Running support size of the sparse variants at 1-based iteration j.
constexpr std::size_t support_size_at(std::size_t khat, std::size_t n,
                                      std::size_t j) noexcept {
  const std::size_t shrinking = j > n ? 0 : n - j + 1;
  return shrinking > khat ? shrinking : khat;
}

/// Runs sweeps * rows(A) iterations from X = 0.
///
/// Cyclic and RK require one right-hand side (B with a single column); SRK
/// likewise. SRK-MMV accepts any number L >= 1 of columns and shares the
/// sampled row, the row-norm support estimate and the weight vector across
/// all of them.
///
/// Errors: DimensionError (shapes), InvalidSparsityError (k-hat outside
/// [1, n]), InvalidValueError (sweeps == 0), UnsupportedVariantError
/// (single-vector variant with L > 1), DegenerateDistributionError (A == 0),
/// ZeroRowError (Cyclic on a matrix with a zero row).
SolveResult solve(const DenseMatrix& a, const DenseMatrix& b,
                  const SolverConfig& cfg,
                  const IterateObserver& observer = {});

}  // namespace srk
