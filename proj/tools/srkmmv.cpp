// srkmmv: run the Monte Carlo experiments, generate fixture problems, solve
// them, and classify feature files.
//
// Exit codes: 0 success, 1 invalid input (flags, spec files, data files),
// 2 failure while computing or writing results.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "srk/classify.hpp"
#include "srk/errors.hpp"
#include "srk/experiments.hpp"
#include "srk/io.hpp"
#include "srk/metrics.hpp"
#include "srk/solvers.hpp"
#include "srk/synth.hpp"

namespace {

// Default output directory when --out is not given. Unset: write to stdout.
constexpr const char* kOutputDirEnv = "SRKMMV_OUTPUT_DIR";

struct OutputOptions {
  std::string out;
  std::string format = "csv";
};

struct ExperimentOptions {
  std::string spec_file;
  std::string preset = "desk";
  std::string regime = "over";
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  std::optional<std::size_t> threads;
  bool keep_outcomes = false;
  OutputOptions output;
};

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw srk::ValidationError("cannot read '" + path + "'");
  return in;
}

// Writes `body` to --out, to $SRKMMV_OUTPUT_DIR/<stem>.<format>, or stdout.
void emit(const OutputOptions& o, const std::string& stem, const std::string& body) {
  std::string path = o.out;
  if (path.empty()) {
    if (const char* dir = std::getenv(kOutputDirEnv); dir && *dir) {
      path = (std::filesystem::path(dir) / (stem + "." + o.format)).string();
    }
  }
  if (path.empty()) {
    std::cout << body;
    std::cout.flush();
    if (!std::cout) throw std::runtime_error("failed writing to stdout");
    return;
  }
  std::ofstream f(path, std::ios::binary);
  f << body;
  f.close();
  if (!f) throw std::runtime_error("failed writing '" + path + "'");
}

srk::ExperimentSpec resolve_spec(srk::ExperimentKind kind, const ExperimentOptions& o) {
  srk::ExperimentSpec spec;
  if (!o.spec_file.empty()) {
    auto in = open_input(o.spec_file);
    spec = srk::parse_spec(in);
    if (spec.kind != kind) {
      throw srk::SpecValidationError("spec file describes a " +
                                     std::string(srk::to_string(spec.kind)) +
                                     " experiment");
    }
  } else {
    const auto scale = o.preset == "paper" ? srk::Scale::Paper : srk::Scale::Desk;
    switch (kind) {
      case srk::ExperimentKind::SupportSweep:
        spec = srk::support_sweep_preset(scale);
        break;
      case srk::ExperimentKind::Convergence:
        spec = srk::convergence_preset(scale);
        break;
      case srk::ExperimentKind::PhaseTransition:
        spec = srk::phase_transition_preset(
            scale, o.regime == "under" ? srk::Regime::Underdetermined
                                       : srk::Regime::Overdetermined);
        break;
    }
  }
  if (o.seed) spec.base_seed = *o.seed;
  if (o.trials) spec.trials = *o.trials;
  if (o.threads) spec.threads = *o.threads;
  spec.keep_outcomes = o.keep_outcomes;
  srk::validate(spec);
  return spec;
}

void add_output_flags(CLI::App* cmd, OutputOptions& o) {
  cmd->add_option("--out", o.out, "Output file (default: stdout or $SRKMMV_OUTPUT_DIR)");
  cmd->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
}

CLI::App* add_experiment(CLI::App& app, const std::string& name,
                         const std::string& help, ExperimentOptions& o) {
  auto* cmd = app.add_subcommand(name, help);
  auto* spec = cmd->add_option("--spec", o.spec_file, "Experiment spec file (key = value)");
  cmd->add_option("--preset", o.preset, "Named parameterization")
      ->check(CLI::IsMember({"paper", "desk"}))
      ->excludes(spec);
  cmd->add_option("--seed", o.seed, "Override the base seed");
  cmd->add_option("--trials", o.trials, "Override trials per grid point");
  cmd->add_option("--threads", o.threads, "Worker threads (0 = all cores)");
  cmd->add_flag("--keep-outcomes", o.keep_outcomes, "Include per-trial outcomes (json)");
  add_output_flags(cmd, o.output);
  return cmd;
}

std::string render_report(const srk::MonteCarloReport& r, const std::string& format) {
  std::ostringstream os;
  if (format == "json") srk::write_report_json(os, r);
  else srk::write_report_csv(os, r);
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparse randomized Kaczmarz solvers and Monte Carlo experiments"};
  app.require_subcommand(1);

  ExperimentOptions sweep_opts, conv_opts, phase_opts;
  auto* sweep_cmd = add_experiment(app, "support-sweep",
                                   "Mean relative error versus estimated support size",
                                   sweep_opts);
  auto* conv_cmd = add_experiment(app, "convergence",
                                  "Mean relative error after each sweep", conv_opts);
  auto* phase_cmd = add_experiment(app, "phase-transition",
                                   "Recovery rate versus sparsity", phase_opts);
  phase_cmd->add_option("--regime", phase_opts.regime, "Preset regime")
      ->check(CLI::IsMember({"over", "under"}));

  struct {
    std::size_t m = 0, n = 0, l = 1, k = 0;
    std::uint64_t seed = 1;
    OutputOptions output;
  } gen;
  auto* gen_cmd = app.add_subcommand("gen-problem", "Write a synthetic fixture problem");
  gen_cmd->add_option("--m", gen.m, "Rows of A")->required();
  gen_cmd->add_option("--n", gen.n, "Columns of A")->required();
  gen_cmd->add_option("--L", gen.l, "Measurement vectors");
  gen_cmd->add_option("--K", gen.k, "Nonzero rows of X")->required();
  gen_cmd->add_option("--seed", gen.seed, "Seed");
  gen_cmd->add_option("--out", gen.output.out, "Output file (default: stdout)");

  struct {
    std::string problem, variant = "srk-mmv", solution_out;
    std::size_t khat = 0, sweeps = 5;
    std::uint64_t seed = 1;
    OutputOptions output;
  } slv;
  auto* solve_cmd = app.add_subcommand("solve", "Solve a fixture problem");
  solve_cmd->add_option("--problem", slv.problem, "Problem file")->required();
  solve_cmd->add_option("--variant", slv.variant, "Solver variant")
      ->check(CLI::IsMember({"cyclic", "rk", "srk", "srk-mmv"}));
  solve_cmd->add_option("--khat", slv.khat, "Estimated support size (default: K from file)");
  solve_cmd->add_option("--sweeps", slv.sweeps, "Sweeps J");
  solve_cmd->add_option("--seed", slv.seed, "Solver seed");
  solve_cmd->add_option("--solution-out", slv.solution_out, "Write the recovered X");
  add_output_flags(solve_cmd, slv.output);

  struct {
    std::string train, test, mode = "mmv";
    std::optional<std::size_t> khat;
    std::size_t sweeps = 20;
    std::uint64_t seed = 1;
    OutputOptions output;
  } cls;
  auto* cls_cmd = app.add_subcommand("classify", "Sparse-representation classification");
  cls_cmd->add_option("--train", cls.train, "Training feature file")->required();
  cls_cmd->add_option("--test", cls.test, "Test frames file")->required();
  cls_cmd->add_option("--mode", cls.mode, "mmv: joint solve; smv: per-frame vote")
      ->check(CLI::IsMember({"mmv", "smv"}));
  cls_cmd->add_option("--khat", cls.khat, "Estimated support (default: largest class)");
  cls_cmd->add_option("--sweeps", cls.sweeps, "Sweeps J");
  cls_cmd->add_option("--seed", cls.seed, "Solver seed");
  add_output_flags(cls_cmd, cls.output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  // Phase 1 validates and loads input (exit 1); phase 2 computes (exit 2).
  std::function<void()> run;
  try {
    if (sweep_cmd->parsed() || conv_cmd->parsed() || phase_cmd->parsed()) {
      const auto kind = sweep_cmd->parsed() ? srk::ExperimentKind::SupportSweep
                        : conv_cmd->parsed() ? srk::ExperimentKind::Convergence
                                             : srk::ExperimentKind::PhaseTransition;
      const ExperimentOptions& o = sweep_cmd->parsed() ? sweep_opts
                                   : conv_cmd->parsed() ? conv_opts
                                                        : phase_opts;
      auto spec = resolve_spec(kind, o);
      run = [spec, &o] {
        const auto report = srk::run_experiment(spec);
        emit(o.output, std::string(srk::to_string(spec.kind)),
             render_report(report, o.output.format));
      };
    } else if (gen_cmd->parsed()) {
      if (gen.m == 0 || gen.n == 0 || gen.l == 0)
        throw srk::DimensionError("m, n and L must be >= 1");
      if (gen.k < 1 || gen.k > gen.n)
        throw srk::InvalidSparsityError("K must lie in [1, n]");
      run = [&] {
        const auto p = srk::generate_problem(gen.m, gen.n, gen.l, gen.k, gen.seed);
        std::ostringstream os;
        srk::write_problem(os, p);
        emit(gen.output, "problem", os.str());
      };
    } else if (solve_cmd->parsed()) {
      auto in = open_input(slv.problem);
      auto prob = std::make_shared<srk::SyntheticProblem>(srk::read_problem(in));
      srk::SolverConfig cfg;
      cfg.variant = srk::parse_variant(slv.variant);
      cfg.estimated_support = slv.khat ? slv.khat : prob->true_support.size();
      cfg.sweeps = slv.sweeps;
      cfg.seed = slv.seed;
      run = [prob, cfg, &slv] {
        const auto res = srk::solve(prob->a, prob->b, cfg);
        const double err = srk::relative_error(prob->x_true, res.solution);
        const double resid =
            std::sqrt(srk::frobenius_norm_sq(srk::subtract(
                prob->b, srk::matmul(prob->a, res.solution)))) /
            std::sqrt(srk::frobenius_norm_sq(prob->b));
        if (!slv.solution_out.empty()) {
          std::ofstream f(slv.solution_out);
          srk::write_matrix(f, res.solution);
          if (!f) throw std::runtime_error("failed writing '" + slv.solution_out + "'");
        }
        std::ostringstream os;
        if (slv.output.format == "json") {
          os << "{\n  \"variant\": \"" << srk::to_string(cfg.variant) << "\",\n"
             << "  \"khat\": " << cfg.estimated_support << ",\n"
             << "  \"sweeps\": " << cfg.sweeps << ",\n"
             << "  \"iterations\": " << res.iterations_run << ",\n"
             << "  \"dot_products\": " << res.dot_products << ",\n"
             << "  \"relative_error\": " << srk::format_double(err) << ",\n"
             << "  \"relative_residual\": " << srk::format_double(resid) << "\n}\n";
        } else {
          os << "variant,khat,sweeps,iterations,dot_products,relative_error,"
                "relative_residual\n"
             << srk::to_string(cfg.variant) << ',' << cfg.estimated_support << ','
             << cfg.sweeps << ',' << res.iterations_run << ',' << res.dot_products
             << ',' << srk::format_double(err) << ',' << srk::format_double(resid)
             << '\n';
        }
        emit(slv.output, "solve", os.str());
      };
    } else if (cls_cmd->parsed()) {
      auto train_in = open_input(cls.train);
      const auto samples = srk::read_training_samples(train_in);
      auto dict = std::make_shared<srk::ClassDictionary>(srk::build_dictionary(samples));
      auto test_in = open_input(cls.test);
      auto frames = std::make_shared<srk::DenseMatrix>(srk::read_test_frames(test_in));
      if (frames->rows() != dict->feature_dim())
        throw srk::DimensionError("test and training feature dimensions differ");
      auto cfg = srk::default_classification_config(*dict, cls.seed);
      if (cls.khat) cfg.estimated_support = *cls.khat;
      cfg.sweeps = cls.sweeps;
      if (cfg.estimated_support < 1 || cfg.estimated_support > dict->v.cols())
        throw srk::InvalidSparsityError("khat must lie in [1, training samples]");
      run = [dict, frames, cfg, &cls] {
        std::ostringstream os;
        if (cls.mode == "mmv") {
          const auto r = srk::classify_mmv(*dict, *frames, cfg);
          if (cls.output.format == "json") srk::write_classification_json(os, *dict, r);
          else srk::write_classification_csv(os, *dict, r);
        } else {
          const auto v = srk::classify_frames_by_vote(*dict, *frames, cfg);
          os << "frame,predicted\n";
          for (std::size_t f = 0; f < v.frame_predictions.size(); ++f)
            os << f << ',' << dict->class_ranges[v.frame_predictions[f]].class_id << '\n';
          os << "vote," << v.predicted << '\n';
        }
        emit(cls.output, "classify", os.str());
      };
    }
  } catch (const srk::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    run();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
