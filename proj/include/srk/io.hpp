#pragma once

// Text formats shared by the CLI and the Python bindings.
//
// Problem fixture (whitespace-delimited decimal text):
//   m n L K seed
//   A        m lines of n numbers
//   X_true   n lines of L numbers
//   support  one line of K indices (0-based)
// B is not stored; readers recompute it as A * X_true.
//
// Matrix file:        "rows cols" then one line per row.
// Training features:  "dim count" then `count` lines "class_id f_1 ... f_dim".
// Test features:      "dim frames" then one line of `dim` numbers per frame.
//
// Experiment spec: one "key = value" per line, '#' starts a comment. Lists
// are comma-separated; "a:b:s" expands to a, a+s, ..., up to b inclusive.
//
//   kind        support-sweep | convergence | phase-transition   (required)
//   m, n        counts                                           (required)
//   L, K        lists of counts                                  (required)
//   sweeps      J                                                (required)
//   trials      trials per grid point                            (required)
//   khat_rule   absolute | offset | multiple     (default absolute)
//   khat        list, for the absolute rule
//   khat_offset count, for the offset rule
//   khat_factor count, for the multiple rule     (default 2)
//   threshold   success threshold                (default 1e-3)
//   seed        base seed                        (default 1)
//   variant     cyclic | rk | srk | srk-mmv      (default srk-mmv)
//   threads     worker threads, 0 = all cores    (default 1)
//
// Numbers are written with 17 significant digits so doubles round-trip.

#include <iosfwd>
#include <string>
#include <vector>

#include "srk/classify.hpp"
#include "srk/experiments.hpp"
#include "srk/linalg.hpp"
#include "srk/synth.hpp"

namespace srk {

/// Shortest-safe round-trip text for a double (17 significant digits).
std::string format_double(double v);

void write_problem(std::ostream& os, const SyntheticProblem& p);
/// Throws ParseError on malformed input.
SyntheticProblem read_problem(std::istream& is);

void write_matrix(std::ostream& os, const DenseMatrix& m);
DenseMatrix read_matrix(std::istream& is);

std::vector<LabeledSample> read_training_samples(std::istream& is);
/// Frames become columns of the returned dim x frames matrix.
DenseMatrix read_test_frames(std::istream& is);

/// Throws SpecValidationError on unknown keys, bad values, missing keys.
ExperimentSpec parse_spec(std::istream& is);
/// Expands "1,3,5:9:2" style lists.
std::vector<std::size_t> parse_count_list(const std::string& text);

/// Column layout per kind:
///   support-sweep     K,khat,mean_rel_err,trials
///   convergence       sweep,mean_rel_err,trials
///   phase-transition  L,K,recovery_rate_pct,trials,mean_dot_products
void write_report_csv(std::ostream& os, const MonteCarloReport& r);
void write_report_json(std::ostream& os, const MonteCarloReport& r);

/// Reads back the numeric columns of write_report_csv.
MonteCarloReport read_report_csv(std::istream& is, ExperimentKind kind);

void write_classification_csv(std::ostream& os, const ClassDictionary& dict,
                              const ClassificationResult& r);
void write_classification_json(std::ostream& os, const ClassDictionary& dict,
                               const ClassificationResult& r);

}  // namespace srk
