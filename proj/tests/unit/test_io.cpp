#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "srk/errors.hpp"
#include "srk/io.hpp"
#include "support/generators.hpp"

using namespace srk;

TEST_CASE("format_double round-trips") {
  testgen::Gen g(1);
  for (int rep = 0; rep < 2000; ++rep) {
    const double v = g.gauss() * std::pow(10.0, g.real(-300, 300));
    CHECK(std::stod(format_double(v)) == v);
  }
  for (double v : {0.0, 1.0, -2.5, 1e-3, 6.2544e-5, std::numeric_limits<double>::min(),
                   std::numeric_limits<double>::max(), 0.1 + 0.2})
    CHECK(std::stod(format_double(v)) == v);
  CHECK(format_double(100.0) == "100");
}

TEST_CASE("problem files round-trip") {
  const SyntheticProblem p = generate_problem(7, 5, 2, 3, std::uint64_t{77});
  std::stringstream ss;
  write_problem(ss, p);
  const SyntheticProblem q = read_problem(ss);
  CHECK(q.a == p.a);
  CHECK(q.x_true == p.x_true);
  CHECK(q.b == p.b);
  CHECK(q.true_support == p.true_support);
  CHECK(q.seed == 77);

  std::istringstream header_only("2 2 1 1 0\n1 2\n");
  CHECK_THROWS_AS(read_problem(header_only), ParseError);
  std::istringstream junk("2 2 1 1 0\n1 2 3 x 1 0 0\n");
  CHECK_THROWS_AS(read_problem(junk), ParseError);
  std::istringstream trailing("1 1 1 1 0\n2\n3\n0\n9\n");
  CHECK_THROWS_AS(read_problem(trailing), ParseError);
  std::istringstream bad_k("1 1 1 2 0\n");
  CHECK_THROWS_AS(read_problem(bad_k), ParseError);
}

TEST_CASE("matrix and feature files") {
  const DenseMatrix m{{1.5, -2}, {0.25, 1e-30}};
  std::stringstream ss;
  write_matrix(ss, m);
  CHECK(read_matrix(ss) == m);

  std::istringstream train("2 3\n4 1 0\n9 0 1\n4 2 0\n");
  const auto samples = read_training_samples(train);
  REQUIRE(samples.size() == 3);
  CHECK(samples[1].class_id == 9);
  CHECK(samples[2].features == Vector{2, 0});

  std::istringstream test("3 2\n1 2 3\n4 5 6\n");
  CHECK(read_test_frames(test) == DenseMatrix{{1, 4}, {2, 5}, {3, 6}});

  std::istringstream short_train("2 2\n1 0 0\n");
  CHECK_THROWS_AS(read_training_samples(short_train), ParseError);
}

TEST_CASE("count lists") {
  CHECK(parse_count_list("5") == std::vector<std::size_t>{5});
  CHECK(parse_count_list("1, 3 ,7") == std::vector<std::size_t>{1, 3, 7});
  CHECK(parse_count_list("5:11:2") == std::vector<std::size_t>{5, 7, 9, 11});
  CHECK(parse_count_list("5:10:2") == std::vector<std::size_t>{5, 7, 9});
  CHECK(parse_count_list("2:4,10") == std::vector<std::size_t>{2, 3, 4, 10});
  CHECK(parse_count_list("1:99:2").size() == 50);
  for (const char* bad : {"", "a", "1,,2", "3:1", "1:5:0", "-1", "1.5"})
    CHECK_THROWS_AS(parse_count_list(bad), SpecValidationError);
}

TEST_CASE("spec files") {
  std::istringstream good(R"(# phase transition, overdetermined
kind = phase-transition
m = 500
n = 100
L = 2,5
K = 5:49:2   # odd sparsities
sweeps = 5
trials = 10
khat_rule = offset
khat_offset = 15
threshold = 1e-3
seed = 42
threads = 2
)");
  const ExperimentSpec s = parse_spec(good);
  CHECK(s.kind == ExperimentKind::PhaseTransition);
  CHECK(s.m == 500);
  CHECK(s.measurement_counts == std::vector<std::size_t>{2, 5});
  CHECK(s.sparsities.size() == 23);
  CHECK(s.khat_rule == KhatRule::Offset);
  CHECK(s.khat_offset == 15);
  CHECK(s.threshold == 1e-3);
  CHECK(s.base_seed == 42);
  CHECK(s.threads == 2);
  CHECK(s.variant == Variant::SRK_MMV);

  auto bad = [](const std::string& text) {
    std::istringstream in(text);
    CHECK_THROWS_AS(parse_spec(in), SpecValidationError);
  };
  const std::string base = "kind = convergence\nm = 10\nn = 20\nL = 1\nK = 2\nsweeps = 3\ntrials = 2\n";
  {
    std::istringstream in(base + "khat = 4\n");
    CHECK_NOTHROW(parse_spec(in));
  }
  bad(base);                              // no khat for the absolute rule
  bad(base + "khat = 4\nbogus = 1\n");    // unknown key
  bad(base + "khat = 4\nm = 11\n");       // duplicate key
  bad(base + "khat = 4\nthreshold = x\n");
  bad(base + "khat = 4\nvariant = omp\n");
  bad(base + "khat = 4\nthis line has no equals\n");
  bad("kind = convergence\nm = 10\n");    // missing keys
  bad(base + "khat = 40\n");              // khat > n
}

TEST_CASE("report CSV is a loss-free round trip") {
  MonteCarloReport r{ExperimentKind::PhaseTransition, {}};
  testgen::Gen g(3);
  for (std::size_t k = 1; k <= 9; k += 2) {
    ReportPoint p;
    p.l = 5;
    p.k = k;
    p.recovery_rate_pct = 100.0 * g.real(0, 1);
    p.trials = 100;
    p.mean_dot_products = 5000.0 + g.real(0, 1);
    r.points.push_back(p);
  }
  std::stringstream ss;
  write_report_csv(ss, r);
  CHECK(ss.str().rfind("L,K,recovery_rate_pct,trials,mean_dot_products\n", 0) == 0);
  const MonteCarloReport back = read_report_csv(ss, r.kind);
  REQUIRE(back.points.size() == r.points.size());
  for (std::size_t i = 0; i < r.points.size(); ++i) {
    CHECK(back.points[i].k == r.points[i].k);
    CHECK(back.points[i].recovery_rate_pct == r.points[i].recovery_rate_pct);
    CHECK(back.points[i].mean_dot_products == r.points[i].mean_dot_products);
  }

  MonteCarloReport c{ExperimentKind::Convergence, {}};
  for (std::size_t s = 1; s <= 3; ++s) {
    ReportPoint p;
    p.sweep = s;
    p.mean_relative_error = std::exp(-static_cast<double>(s)) / 3;
    p.trials = 50;
    c.points.push_back(p);
  }
  std::stringstream cs;
  write_report_csv(cs, c);
  CHECK(cs.str().rfind("sweep,mean_rel_err,trials\n", 0) == 0);
  const MonteCarloReport cb = read_report_csv(cs, c.kind);
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(cb.points[i].mean_relative_error == c.points[i].mean_relative_error);

  MonteCarloReport sw{ExperimentKind::SupportSweep, {}};
  ReportPoint p;
  p.k = 10;
  p.khat = 21;
  p.mean_relative_error = 6.2544e-5;
  p.trials = 100;
  sw.points.push_back(p);
  std::stringstream ws;
  write_report_csv(ws, sw);
  CHECK(ws.str() == "K,khat,mean_rel_err,trials\n10,21,6.2544000000000003e-05,100\n");
  CHECK(read_report_csv(ws, sw.kind).points[0].mean_relative_error == 6.2544e-5);
}

TEST_CASE("report JSON") {
  MonteCarloReport r{ExperimentKind::SupportSweep, {}};
  ReportPoint p;
  p.k = 10;
  p.khat = 21;
  p.mean_relative_error = 1.0 / 3;
  p.trials = 4;
  p.outcomes = {make_outcome(0.5, 1e-3, 8)};
  r.points.push_back(p);
  std::stringstream ss;
  write_report_json(ss, r);
  const auto j = nlohmann::json::parse(ss.str());
  CHECK(j["kind"] == "support-sweep");
  CHECK(j["points"][0]["khat"] == 21);
  CHECK(j["points"][0]["mean_rel_err"].get<double>() == 1.0 / 3);
  CHECK(j["points"][0]["outcomes"][0]["success"] == false);
}

TEST_CASE("classification output") {
  const std::vector<LabeledSample> s{{3, Vector{1, 0}}, {8, Vector{0, 1}}};
  const ClassDictionary d = build_dictionary(s);
  const ClassificationResult r{{0.5, 0.25}, 1, 8, DenseMatrix(2, 1)};
  std::stringstream ss;
  write_classification_csv(ss, d, r);
  CHECK(ss.str() == "class,residual,predicted\n3,0.5,0\n8,0.25,1\n");
  std::stringstream js;
  write_classification_json(js, d, r);
  const auto j = nlohmann::json::parse(js.str());
  CHECK(j["predicted"] == 8);
  CHECK(j["residuals"][1]["class"] == 8);
}
