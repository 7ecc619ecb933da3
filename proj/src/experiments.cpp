#include "srk/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "srk/errors.hpp"
#include "srk/synth.hpp"

namespace srk {

namespace {

constexpr std::uint64_t kSolverStream = 0x736f6c7665720001ULL;

// Runs body(0..count-1) on up to `threads` workers. Each index writes only
// its own output slot, so results do not depend on scheduling.
template <typename Body>
void parallel_for(std::size_t count, std::size_t threads, Body&& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            body(i);
          } catch (...) {
            std::lock_guard lock(failure_mu);
            if (!failure) failure = std::current_exception();
            next = count;
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

struct GridPoint {
  std::size_t l;
  std::size_t k;
  std::size_t khat;
};

struct TrialResult {
  double error;
  std::uint64_t dot_products;
};

SolverConfig solver_config(const ExperimentSpec& spec, std::size_t khat,
                           std::uint64_t seed) {
  SolverConfig cfg;
  cfg.variant = spec.variant;
  cfg.estimated_support = khat;
  cfg.sweeps = spec.sweeps;
  cfg.seed = mix64(seed ^ kSolverStream);
  return cfg;
}

TrialResult run_trial(const ExperimentSpec& spec, const GridPoint& p,
                      std::size_t trial) {
  const std::uint64_t seed = trial_seed(spec.base_seed, p.l, p.k, p.khat, trial);
  const SyntheticProblem prob = generate_problem(spec.m, spec.n, p.l, p.k, seed);
  const SolveResult res = solve(prob.a, prob.b, solver_config(spec, p.khat, seed));
  return {relative_error(prob.x_true, res.solution), res.dot_products};
}

ReportPoint aggregate(const ExperimentSpec& spec, const GridPoint& p,
                      std::size_t sweep, std::span<const TrialResult> trials) {
  ReportPoint out;
  out.l = p.l;
  out.k = p.k;
  out.khat = p.khat;
  out.sweep = sweep;
  out.trials = trials.size();
  std::vector<RecoveryOutcome> outcomes;
  outcomes.reserve(trials.size());
  double err_sum = 0.0;
  double dot_sum = 0.0;
  for (const auto& t : trials) {
    err_sum += t.error;
    dot_sum += static_cast<double>(t.dot_products);
    outcomes.push_back(make_outcome(t.error, spec.threshold, t.dot_products));
  }
  const double count = static_cast<double>(trials.size());
  out.mean_relative_error = err_sum / count;
  out.mean_dot_products = dot_sum / count;
  out.recovery_rate_pct = recovery_rate(outcomes);
  if (spec.keep_outcomes) out.outcomes = std::move(outcomes);
  return out;
}

// Runs every (point, trial) pair and aggregates per point in grid order.
MonteCarloReport run_grid(const ExperimentSpec& spec,
                          const std::vector<GridPoint>& grid) {
  const std::size_t trials = spec.trials;
  std::vector<TrialResult> results(grid.size() * trials);
  parallel_for(results.size(), spec.threads, [&](std::size_t idx) {
    results[idx] = run_trial(spec, grid[idx / trials], idx % trials);
  });

  MonteCarloReport report{spec.kind, {}};
  report.points.reserve(grid.size());
  for (std::size_t g = 0; g < grid.size(); ++g) {
    report.points.push_back(aggregate(
        spec, grid[g], spec.sweeps,
        std::span<const TrialResult>(results).subspan(g * trials, trials)));
  }
  return report;
}

void require_kind(const ExperimentSpec& spec, ExperimentKind kind) {
  if (spec.kind != kind) {
    throw SpecValidationError("experiment kind is " +
                              std::string(to_string(spec.kind)) + ", expected " +
                              std::string(to_string(kind)));
  }
}

std::vector<std::size_t> odd_range(std::size_t first, std::size_t last) {
  std::vector<std::size_t> out;
  for (std::size_t v = first; v <= last; v += 2) out.push_back(v);
  return out;
}

}  // namespace

std::string_view to_string(ExperimentKind k) noexcept {
  switch (k) {
    case ExperimentKind::SupportSweep: return "support-sweep";
    case ExperimentKind::Convergence: return "convergence";
    case ExperimentKind::PhaseTransition: return "phase-transition";
  }
  return "unknown";
}

ExperimentKind parse_experiment_kind(std::string_view s) {
  if (s == "support-sweep") return ExperimentKind::SupportSweep;
  if (s == "convergence") return ExperimentKind::Convergence;
  if (s == "phase-transition") return ExperimentKind::PhaseTransition;
  throw SpecValidationError("unknown experiment kind '" + std::string(s) + "'");
}

std::string_view to_string(KhatRule r) noexcept {
  switch (r) {
    case KhatRule::Absolute: return "absolute";
    case KhatRule::Offset: return "offset";
    case KhatRule::Multiple: return "multiple";
  }
  return "unknown";
}

KhatRule parse_khat_rule(std::string_view s) {
  if (s == "absolute") return KhatRule::Absolute;
  if (s == "offset") return KhatRule::Offset;
  if (s == "multiple") return KhatRule::Multiple;
  throw SpecValidationError("unknown khat rule '" + std::string(s) + "'");
}

std::vector<std::size_t> khats_for(const ExperimentSpec& spec, std::size_t k) {
  switch (spec.khat_rule) {
    case KhatRule::Absolute: return spec.khat_values;
    case KhatRule::Offset: return {k + spec.khat_offset};
    case KhatRule::Multiple: return {k * spec.khat_factor};
  }
  return {};
}

void validate(const ExperimentSpec& spec) {
  auto fail = [](const std::string& msg) { throw SpecValidationError(msg); };
  if (spec.m < 1 || spec.n < 1) fail("m and n must be >= 1");
  if (spec.measurement_counts.empty()) fail("at least one L is required");
  for (std::size_t l : spec.measurement_counts)
    if (l < 1) fail("every L must be >= 1");
  if (spec.sparsities.empty()) fail("at least one K is required");
  if (spec.sweeps < 1) fail("sweeps must be >= 1");
  if (spec.trials < 1) fail("trials must be >= 1");
  if (!(spec.threshold > 0.0)) fail("threshold must be positive");
  if (spec.khat_rule == KhatRule::Absolute && spec.khat_values.empty()) {
    fail("absolute khat rule needs at least one khat value");
  }
  if (spec.khat_rule == KhatRule::Multiple && spec.khat_factor < 1) {
    fail("khat factor must be >= 1");
  }
  const bool sparse =
      spec.variant == Variant::SRK || spec.variant == Variant::SRK_MMV;
  if (spec.variant != Variant::SRK_MMV) {
    for (std::size_t l : spec.measurement_counts)
      if (l != 1) fail("variant " + std::string(to_string(spec.variant)) +
                       " supports L = 1 only");
  }
  for (std::size_t k : spec.sparsities) {
    if (k < 1 || k > spec.n) {
      fail("K = " + std::to_string(k) + " outside [1, n = " +
           std::to_string(spec.n) + "]");
    }
    if (!sparse) continue;
    for (std::size_t kh : khats_for(spec, k)) {
      if (kh < 1 || kh > spec.n) {
        fail("khat = " + std::to_string(kh) + " for K = " + std::to_string(k) +
             " outside [1, n = " + std::to_string(spec.n) + "]");
      }
    }
  }
  switch (spec.kind) {
    case ExperimentKind::SupportSweep:
      if (spec.measurement_counts.size() != 1) fail("support-sweep takes one L");
      if (spec.khat_rule != KhatRule::Absolute)
        fail("support-sweep needs the absolute khat rule");
      break;
    case ExperimentKind::Convergence:
      if (spec.measurement_counts.size() != 1) fail("convergence takes one L");
      if (spec.sparsities.size() != 1) fail("convergence takes one K");
      if (khats_for(spec, spec.sparsities.front()).size() != 1)
        fail("convergence takes one khat");
      break;
    case ExperimentKind::PhaseTransition:
      break;
  }
}

std::uint64_t trial_seed(std::uint64_t base, std::size_t l, std::size_t k,
                         std::size_t khat, std::size_t trial) noexcept {
  return derive_seed(base, l, k, khat, trial);
}

MonteCarloReport run_support_sweep(const ExperimentSpec& spec) {
  require_kind(spec, ExperimentKind::SupportSweep);
  validate(spec);
  std::vector<GridPoint> grid;
  const std::size_t l = spec.measurement_counts.front();
  for (std::size_t k : spec.sparsities)
    for (std::size_t kh : khats_for(spec, k)) grid.push_back({l, k, kh});
  return run_grid(spec, grid);
}

MonteCarloReport run_phase_transition(const ExperimentSpec& spec) {
  require_kind(spec, ExperimentKind::PhaseTransition);
  validate(spec);
  std::vector<GridPoint> grid;
  for (std::size_t l : spec.measurement_counts)
    for (std::size_t k : spec.sparsities)
      for (std::size_t kh : khats_for(spec, k)) grid.push_back({l, k, kh});
  return run_grid(spec, grid);
}

MonteCarloReport run_convergence(const ExperimentSpec& spec) {
  require_kind(spec, ExperimentKind::Convergence);
  validate(spec);
  const GridPoint p{spec.measurement_counts.front(), spec.sparsities.front(),
                    khats_for(spec, spec.sparsities.front()).front()};
  const std::size_t sweeps = spec.sweeps;

  // results[trial * sweeps + (s - 1)] holds the state after sweep s.
  std::vector<TrialResult> results(spec.trials * sweeps);
  parallel_for(spec.trials, spec.threads, [&](std::size_t trial) {
    const std::uint64_t seed =
        trial_seed(spec.base_seed, p.l, p.k, p.khat, trial);
    const SyntheticProblem prob = generate_problem(spec.m, spec.n, p.l, p.k, seed);
    SolverConfig cfg = solver_config(spec, p.khat, seed);
    cfg.trace_every = spec.m;
    const std::uint64_t dots_per_sweep = 2ULL * p.l * spec.m;
    solve(prob.a, prob.b, cfg, [&](std::size_t iteration, const DenseMatrix& x) {
      const std::size_t s = iteration / spec.m;
      results[trial * sweeps + s - 1] = {relative_error(prob.x_true, x),
                                         dots_per_sweep * s};
    });
  });

  MonteCarloReport report{spec.kind, {}};
  std::vector<TrialResult> per_sweep(spec.trials);
  for (std::size_t s = 1; s <= sweeps; ++s) {
    for (std::size_t t = 0; t < spec.trials; ++t)
      per_sweep[t] = results[t * sweeps + s - 1];
    report.points.push_back(aggregate(spec, p, s, per_sweep));
  }
  return report;
}

MonteCarloReport run_experiment(const ExperimentSpec& spec) {
  switch (spec.kind) {
    case ExperimentKind::SupportSweep: return run_support_sweep(spec);
    case ExperimentKind::Convergence: return run_convergence(spec);
    case ExperimentKind::PhaseTransition: return run_phase_transition(spec);
  }
  throw SpecValidationError("unknown experiment kind");
}

ExperimentSpec support_sweep_preset(Scale scale) {
  ExperimentSpec s;
  s.kind = ExperimentKind::SupportSweep;
  s.m = 500;
  s.n = 100;
  s.measurement_counts = {5};
  s.sweeps = 5;
  s.khat_rule = KhatRule::Absolute;
  s.khat_values = odd_range(1, 99);
  if (scale == Scale::Paper) {
    s.sparsities = {10, 20, 30, 40};
    s.trials = 100;
  } else {
    s.sparsities = {10};
    s.trials = 50;
  }
  return s;
}

ExperimentSpec convergence_preset(Scale scale) {
  ExperimentSpec s;
  s.kind = ExperimentKind::Convergence;
  s.m = 100;
  s.n = 400;
  s.measurement_counts = {5};
  s.sparsities = {10};
  s.khat_rule = KhatRule::Absolute;
  s.khat_values = {20};
  s.sweeps = 50;
  s.trials = scale == Scale::Paper ? 500 : 50;
  return s;
}

ExperimentSpec phase_transition_preset(Scale scale, Regime regime) {
  ExperimentSpec s;
  s.kind = ExperimentKind::PhaseTransition;
  if (regime == Regime::Overdetermined) {
    s.m = 500;
    s.n = 100;
    s.sweeps = 5;
    s.khat_rule = KhatRule::Offset;
    s.khat_offset = 15;
    s.sparsities = odd_range(5, 49);
    s.measurement_counts =
        scale == Scale::Paper ? std::vector<std::size_t>{2, 5, 10, 15}
                              : std::vector<std::size_t>{5};
  } else {
    s.m = 50;
    s.n = 200;
    s.sweeps = 50;
    s.khat_rule = KhatRule::Multiple;
    s.khat_factor = 2;
    s.sparsities = odd_range(1, 25);
    s.measurement_counts =
        scale == Scale::Paper ? std::vector<std::size_t>{2, 5, 10}
                              : std::vector<std::size_t>{2};
  }
  s.trials = scale == Scale::Paper ? 500 : 50;
  return s;
}

}  // namespace srk
