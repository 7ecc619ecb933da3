#pragma once

// Deterministic Monte Carlo harness for the synthetic recovery experiments:
// estimated-support sweep, convergence per sweep, and sparsity phase
// transition.
//
// Every trial draws its own problem from
//   seed = base_seed + hash(L, K, khat, trial)
// so a grid point's numbers do not depend on which other points are in the
// grid, on enumeration order, or on the thread count.

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "srk/metrics.hpp"
#include "srk/solvers.hpp"

namespace srk {

enum class ExperimentKind { SupportSweep, Convergence, PhaseTransition };

/// How the solver's estimated support k-hat is derived from the sparsity K.
enum class KhatRule {
  Absolute,  // use khat_values directly
  Offset,    // K + khat_offset
  Multiple,  // khat_factor * K
};

enum class Scale { Paper, Desk };
enum class Regime { Overdetermined, Underdetermined };

std::string_view to_string(ExperimentKind k) noexcept;
ExperimentKind parse_experiment_kind(std::string_view s);
std::string_view to_string(KhatRule r) noexcept;
KhatRule parse_khat_rule(std::string_view s);

struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::PhaseTransition;
  std::size_t m = 0;
  std::size_t n = 0;
  std::vector<std::size_t> measurement_counts;  // L values
  std::vector<std::size_t> sparsities;          // K values
  KhatRule khat_rule = KhatRule::Absolute;
  std::vector<std::size_t> khat_values;
  std::size_t khat_offset = 0;
  std::size_t khat_factor = 2;
  std::size_t sweeps = 1;
  std::size_t trials = 1;
  double threshold = kDefaultSuccessThreshold;
  std::uint64_t base_seed = 1;
  Variant variant = Variant::SRK_MMV;
  /// Worker threads; 0 picks the hardware concurrency.
  std::size_t threads = 1;
  /// Keep every trial's outcome in the report.
  bool keep_outcomes = false;
};

/// Throws SpecValidationError describing the first violated constraint.
void validate(const ExperimentSpec& spec);

/// k-hat values the spec assigns to sparsity K.
std::vector<std::size_t> khats_for(const ExperimentSpec& spec, std::size_t k);

struct ReportPoint {
  std::size_t l = 0;
  std::size_t k = 0;
  std::size_t khat = 0;
  std::size_t sweep = 0;  // sweeps completed at this point
  double mean_relative_error = 0.0;
  double recovery_rate_pct = 0.0;
  double mean_dot_products = 0.0;
  std::size_t trials = 0;
  std::vector<RecoveryOutcome> outcomes;  // filled when keep_outcomes
};

struct MonteCarloReport {
  ExperimentKind kind = ExperimentKind::PhaseTransition;
  std::vector<ReportPoint> points;
};

/// One record per (K, k-hat) pair for the single L in the spec.
MonteCarloReport run_support_sweep(const ExperimentSpec& spec);

/// One record per sweep 1..J for the single (L, K, k-hat) in the spec.
MonteCarloReport run_convergence(const ExperimentSpec& spec);

/// One record per (L, K) pair.
MonteCarloReport run_phase_transition(const ExperimentSpec& spec);

/// Dispatches on spec.kind.
MonteCarloReport run_experiment(const ExperimentSpec& spec);

/// Problem and solver seeds for one trial.
std::uint64_t trial_seed(std::uint64_t base, std::size_t l, std::size_t k,
                         std::size_t khat, std::size_t trial) noexcept;

// Named parameterizations. Paper scale uses the published trial counts;
// desk scale keeps the dimensions and cuts the trials.
ExperimentSpec support_sweep_preset(Scale scale);
ExperimentSpec convergence_preset(Scale scale);
ExperimentSpec phase_transition_preset(Scale scale, Regime regime);

}  // namespace srk
