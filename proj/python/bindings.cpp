#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>

#include "srk/classify.hpp"
#include "srk/errors.hpp"
#include "srk/experiments.hpp"
#include "srk/io.hpp"
#include "srk/linalg.hpp"
#include "srk/metrics.hpp"
#include "srk/sampling.hpp"
#include "srk/solvers.hpp"
#include "srk/synth.hpp"

namespace py = pybind11;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

srk::DenseMatrix to_matrix(const Array& arr) {
  if (arr.ndim() == 1) {
    const auto n = static_cast<std::size_t>(arr.shape(0));
    return srk::DenseMatrix(n, 1, std::vector<double>(arr.data(), arr.data() + n));
  }
  if (arr.ndim() != 2) throw srk::DimensionError("expected a 1-D or 2-D array");
  const auto r = static_cast<std::size_t>(arr.shape(0));
  const auto c = static_cast<std::size_t>(arr.shape(1));
  return srk::DenseMatrix(r, c, std::vector<double>(arr.data(), arr.data() + r * c));
}

srk::Vector to_vector(const Array& arr) {
  if (arr.ndim() != 1) throw srk::DimensionError("expected a 1-D array");
  return srk::Vector(std::vector<double>(arr.data(), arr.data() + arr.shape(0)));
}

Array from_matrix(const srk::DenseMatrix& m) {
  Array out({m.rows(), m.cols()});
  std::copy(m.data().begin(), m.data().end(), out.mutable_data());
  return out;
}

Array from_vector(std::span<const double> v) {
  Array out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

py::dict report_to_dict(const srk::MonteCarloReport& r) {
  py::list points;
  for (const auto& p : r.points) {
    py::dict d;
    d["L"] = p.l;
    d["K"] = p.k;
    d["khat"] = p.khat;
    d["sweep"] = p.sweep;
    d["mean_rel_err"] = p.mean_relative_error;
    d["recovery_rate_pct"] = p.recovery_rate_pct;
    d["mean_dot_products"] = p.mean_dot_products;
    d["trials"] = p.trials;
    points.append(d);
  }
  py::dict out;
  out["kind"] = std::string(srk::to_string(r.kind));
  out["points"] = points;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Kaczmarz-family sparse recovery solvers (SRK, SRK-MMV)";

  auto base = py::register_exception<srk::Error>(m, "SrkError", PyExc_RuntimeError);
  py::register_exception<srk::ValidationError>(m, "ValidationError", base.ptr());
  py::register_exception<srk::SingularMatrixError>(m, "SingularMatrixError", base.ptr());
  py::register_exception<srk::DegenerateDistributionError>(m, "DegenerateDistributionError",
                                                           base.ptr());
  py::register_exception<srk::ZeroRowError>(m, "ZeroRowError", base.ptr());
  py::register_exception<srk::DegenerateMetricError>(m, "DegenerateMetricError", base.ptr());

  m.def("least_squares_oracle",
        [](const Array& a, const Array& b) {
          return from_vector(srk::least_squares_oracle(to_matrix(a), to_vector(b)).span());
        },
        py::arg("A"), py::arg("b"));

  m.def("kaczmarz_step",
        [](const Array& x, const Array& a, double b) {
          return from_vector(srk::kaczmarz_step(to_vector(x), to_vector(a), b).span());
        },
        py::arg("x"), py::arg("a"), py::arg("b"));

  m.def("weighted_kaczmarz_step",
        [](const Array& x, const Array& a, double b, const Array& w, std::size_t j) {
          srk::WeightVector wv{to_vector(w), j};
          return from_vector(
              srk::weighted_kaczmarz_step(to_vector(x), to_vector(a), b, wv).span());
        },
        py::arg("x"), py::arg("a"), py::arg("b"), py::arg("weights"),
        py::arg("iteration") = 1);

  m.def("estimate_support_smv",
        [](const Array& x, std::size_t size) {
          return srk::estimate_support_smv(to_vector(x), size).indices();
        },
        py::arg("x"), py::arg("size"));

  m.def("estimate_support_mmv",
        [](const Array& x, std::size_t size) {
          return srk::estimate_support_mmv(to_matrix(x), size).indices();
        },
        py::arg("X"), py::arg("size"));

  m.def("build_weight_vector",
        [](const std::vector<std::size_t>& support, std::size_t n, std::size_t j) {
          return from_vector(
              srk::build_weight_vector(srk::SupportSet(support, n), n, j).weights.span());
        },
        py::arg("support"), py::arg("n"), py::arg("iteration"));

  m.def("solve",
        [](const Array& a, const Array& b, const std::string& variant, std::size_t khat,
           std::size_t sweeps, std::uint64_t seed, std::size_t trace_every) {
          srk::SolverConfig cfg{srk::parse_variant(variant), khat, sweeps, seed,
                                trace_every};
          const auto am = to_matrix(a);
          const auto bm = to_matrix(b);
          const srk::SolveResult r = [&] {
            py::gil_scoped_release release;
            return srk::solve(am, bm, cfg);
          }();
          py::list trace;
          for (const auto& t : r.trace)
            trace.append(py::make_tuple(t.iteration, t.relative_residual));
          py::dict out;
          out["solution"] = from_matrix(r.solution);
          out["iterations_run"] = r.iterations_run;
          out["dot_products"] = r.dot_products;
          out["trace"] = trace;
          return out;
        },
        py::arg("A"), py::arg("B"), py::arg("variant") = "srk-mmv", py::arg("khat") = 1,
        py::arg("sweeps") = 1, py::arg("seed") = 0, py::arg("trace_every") = 0);

  m.def("generate_problem",
        [](std::size_t mm, std::size_t n, std::size_t l, std::size_t k, std::uint64_t seed) {
          const auto p = srk::generate_problem(mm, n, l, k, seed);
          py::dict out;
          out["A"] = from_matrix(p.a);
          out["X"] = from_matrix(p.x_true);
          out["B"] = from_matrix(p.b);
          out["support"] = p.true_support.indices();
          out["seed"] = p.seed;
          return out;
        },
        py::arg("m"), py::arg("n"), py::arg("L"), py::arg("K"), py::arg("seed"));

  m.def("relative_error",
        [](const Array& x_true, const Array& x_hat) {
          return srk::relative_error(to_matrix(x_true), to_matrix(x_hat));
        },
        py::arg("X_true"), py::arg("X_hat"));

  m.def("is_success", &srk::is_success, py::arg("err"),
        py::arg("threshold") = srk::kDefaultSuccessThreshold);

  m.def("run_experiment",
        [](const std::string& spec_text, std::optional<std::size_t> trials,
           std::optional<std::uint64_t> seed, std::size_t threads) {
          std::istringstream in(spec_text);
          auto spec = srk::parse_spec(in);
          if (trials) spec.trials = *trials;
          if (seed) spec.base_seed = *seed;
          spec.threads = threads;
          const srk::MonteCarloReport r = [&] {
            py::gil_scoped_release release;
            return srk::run_experiment(spec);
          }();
          return report_to_dict(r);
        },
        py::arg("spec"), py::arg("trials") = py::none(), py::arg("seed") = py::none(),
        py::arg("threads") = 1,
        "Run an experiment described by spec-file text (key = value lines).");

  m.def("classify",
        [](const Array& train, const std::vector<int>& labels, const Array& test,
           const std::string& mode, std::optional<std::size_t> khat, std::size_t sweeps,
           std::uint64_t seed) {
          const auto tm = to_matrix(train);
          if (labels.size() != tm.rows())
            throw srk::DimensionError("one label per training row is required");
          std::vector<srk::LabeledSample> samples;
          for (std::size_t i = 0; i < tm.rows(); ++i) {
            auto r = tm.row(i);
            samples.push_back({labels[i], srk::Vector(std::vector<double>(r.begin(), r.end()))});
          }
          const auto dict = srk::build_dictionary(samples);
          auto cfg = srk::default_classification_config(dict, seed);
          if (khat) cfg.estimated_support = *khat;
          cfg.sweeps = sweeps;
          // Test frames arrive one per row, like the training samples.
          const auto frames = srk::transpose(to_matrix(test));
          py::dict out;
          if (mode == "mmv") {
            const auto r = srk::classify_mmv(dict, frames, cfg);
            out["predicted"] = r.predicted;
            out["residuals"] = r.residuals;
          } else if (mode == "smv") {
            const auto v = srk::classify_frames_by_vote(dict, frames, cfg);
            out["predicted"] = v.predicted;
          } else {
            throw srk::ValidationError("mode must be 'mmv' or 'smv'");
          }
          std::vector<int> ids;
          for (const auto& r : dict.class_ranges) ids.push_back(r.class_id);
          out["classes"] = ids;
          return out;
        },
        py::arg("train"), py::arg("labels"), py::arg("test"), py::arg("mode") = "mmv",
        py::arg("khat") = py::none(), py::arg("sweeps") = 20, py::arg("seed") = 0);
}
