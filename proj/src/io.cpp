#include "srk/io.hpp"

#include <charconv>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string_view>

#include <json.hpp>

#include "srk/errors.hpp"

namespace srk {

namespace {

// Whitespace-delimited token reader with typed, checked conversions.
class Tokens {
 public:
  explicit Tokens(std::istream& is, std::string what)
      : is_(is), what_(std::move(what)) {}

  std::string next() {
    std::string tok;
    if (!(is_ >> tok)) throw ParseError(what_ + ": unexpected end of input");
    return tok;
  }

  double real() {
    const std::string tok = next();
    double v = 0.0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size()) {
      throw ParseError(what_ + ": '" + tok + "' is not a number");
    }
    return v;
  }

  template <typename Int>
  Int count() {
    const std::string tok = next();
    Int v{};
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size()) {
      throw ParseError(what_ + ": '" + tok + "' is not an integer");
    }
    return v;
  }

  void expect_end() {
    std::string tok;
    if (is_ >> tok) throw ParseError(what_ + ": trailing data '" + tok + "'");
  }

 private:
  std::istream& is_;
  std::string what_;
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

template <typename Int>
Int parse_int(const std::string& text, const std::string& key) {
  Int v{};
  const std::string t = trim(text);
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || p != t.data() + t.size()) {
    throw SpecValidationError("spec key '" + key + "': '" + t +
                              "' is not a non-negative integer");
  }
  return v;
}

void write_row(std::ostream& os, std::span<const double> values) {
  for (std::size_t j = 0; j < values.size(); ++j) {
    if (j) os << ' ';
    os << format_double(values[j]);
  }
  os << '\n';
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v,
                               std::chars_format::general, 17);
  return std::string(buf, p);
}

void write_problem(std::ostream& os, const SyntheticProblem& p) {
  os << p.a.rows() << ' ' << p.a.cols() << ' ' << p.x_true.cols() << ' '
     << p.true_support.size() << ' ' << p.seed << '\n';
  for (std::size_t i = 0; i < p.a.rows(); ++i) write_row(os, p.a.row(i));
  for (std::size_t i = 0; i < p.x_true.rows(); ++i) write_row(os, p.x_true.row(i));
  bool first = true;
  for (std::size_t s : p.true_support) {
    if (!first) os << ' ';
    os << s;
    first = false;
  }
  os << '\n';
}

SyntheticProblem read_problem(std::istream& is) {
  Tokens t(is, "problem file");
  const auto m = t.count<std::size_t>();
  const auto n = t.count<std::size_t>();
  const auto l = t.count<std::size_t>();
  const auto k = t.count<std::size_t>();
  const auto seed = t.count<std::uint64_t>();
  if (m == 0 || n == 0 || l == 0) throw ParseError("problem file: zero dimension");
  if (k < 1 || k > n) throw ParseError("problem file: K outside [1, n]");

  std::vector<double> a(m * n);
  for (double& v : a) v = t.real();
  std::vector<double> x(n * l);
  for (double& v : x) v = t.real();
  std::vector<std::size_t> support(k);
  for (auto& s : support) s = t.count<std::size_t>();
  t.expect_end();

  DenseMatrix am(m, n, std::move(a));
  DenseMatrix xm(n, l, std::move(x));
  DenseMatrix b = matmul(am, xm);
  return {std::move(am), std::move(xm), std::move(b),
          SupportSet(std::move(support), n), seed};
}

void write_matrix(std::ostream& os, const DenseMatrix& m) {
  os << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) write_row(os, m.row(i));
}

DenseMatrix read_matrix(std::istream& is) {
  Tokens t(is, "matrix file");
  const auto rows = t.count<std::size_t>();
  const auto cols = t.count<std::size_t>();
  if (rows == 0 || cols == 0) throw ParseError("matrix file: zero dimension");
  std::vector<double> data(rows * cols);
  for (double& v : data) v = t.real();
  t.expect_end();
  return DenseMatrix(rows, cols, std::move(data));
}

std::vector<LabeledSample> read_training_samples(std::istream& is) {
  Tokens t(is, "training feature file");
  const auto dim = t.count<std::size_t>();
  const auto count = t.count<std::size_t>();
  if (dim == 0 || count == 0) throw ParseError("training feature file: empty");
  std::vector<LabeledSample> out;
  out.reserve(count);
  for (std::size_t s = 0; s < count; ++s) {
    const auto id = t.count<ClassId>();
    std::vector<double> f(dim);
    for (double& v : f) v = t.real();
    out.push_back({id, Vector(std::move(f))});
  }
  t.expect_end();
  return out;
}

DenseMatrix read_test_frames(std::istream& is) {
  Tokens t(is, "test feature file");
  const auto dim = t.count<std::size_t>();
  const auto frames = t.count<std::size_t>();
  if (dim == 0 || frames == 0) throw ParseError("test feature file: empty");
  DenseMatrix out(dim, frames);
  for (std::size_t f = 0; f < frames; ++f)
    for (std::size_t r = 0; r < dim; ++r) out(r, f) = t.real();
  t.expect_end();
  return out;
}

std::vector<std::size_t> parse_count_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) throw SpecValidationError("empty list item in '" + text + "'");
    const auto c1 = item.find(':');
    if (c1 == std::string::npos) {
      out.push_back(parse_int<std::size_t>(item, "list"));
      continue;
    }
    const auto c2 = item.find(':', c1 + 1);
    const auto first = parse_int<std::size_t>(item.substr(0, c1), "range");
    const auto last = parse_int<std::size_t>(
        item.substr(c1 + 1, c2 == std::string::npos ? std::string::npos : c2 - c1 - 1),
        "range");
    const std::size_t step =
        c2 == std::string::npos ? 1 : parse_int<std::size_t>(item.substr(c2 + 1), "range");
    if (step == 0 || last < first) {
      throw SpecValidationError("bad range '" + item + "'");
    }
    for (std::size_t v = first; v <= last; v += step) out.push_back(v);
  }
  if (out.empty()) throw SpecValidationError("empty list");
  return out;
}

ExperimentSpec parse_spec(std::istream& is) {
  std::map<std::string, std::string> kv;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw SpecValidationError("spec line " + std::to_string(lineno) +
                                ": expected 'key = value'");
    }
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw SpecValidationError("spec line " + std::to_string(lineno) +
                                ": empty key or value");
    }
    if (!kv.emplace(key, value).second) {
      throw SpecValidationError("spec key '" + key + "' given twice");
    }
  }

  static const std::set<std::string> known = {
      "kind",   "m",      "n",         "L",           "K",
      "sweeps", "trials", "khat_rule", "khat",        "khat_offset",
      "khat_factor", "threshold", "seed", "variant", "threads"};
  for (const auto& [key, _] : kv) {
    if (!known.contains(key)) throw SpecValidationError("unknown spec key '" + key + "'");
  }
  for (const char* req : {"kind", "m", "n", "L", "K", "sweeps", "trials"}) {
    if (!kv.contains(req)) {
      throw SpecValidationError(std::string("missing spec key '") + req + "'");
    }
  }

  ExperimentSpec s;
  s.kind = parse_experiment_kind(kv["kind"]);
  s.m = parse_int<std::size_t>(kv["m"], "m");
  s.n = parse_int<std::size_t>(kv["n"], "n");
  s.measurement_counts = parse_count_list(kv["L"]);
  s.sparsities = parse_count_list(kv["K"]);
  s.sweeps = parse_int<std::size_t>(kv["sweeps"], "sweeps");
  s.trials = parse_int<std::size_t>(kv["trials"], "trials");
  if (kv.contains("khat_rule")) s.khat_rule = parse_khat_rule(kv["khat_rule"]);
  if (kv.contains("khat")) s.khat_values = parse_count_list(kv["khat"]);
  if (kv.contains("khat_offset"))
    s.khat_offset = parse_int<std::size_t>(kv["khat_offset"], "khat_offset");
  if (kv.contains("khat_factor"))
    s.khat_factor = parse_int<std::size_t>(kv["khat_factor"], "khat_factor");
  if (kv.contains("threshold")) {
    const std::string& t = kv["threshold"];
    double v = 0.0;
    auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || p != t.data() + t.size()) {
      throw SpecValidationError("spec key 'threshold': '" + t + "' is not a number");
    }
    s.threshold = v;
  }
  if (kv.contains("seed")) s.base_seed = parse_int<std::uint64_t>(kv["seed"], "seed");
  if (kv.contains("variant")) {
    try {
      s.variant = parse_variant(kv["variant"]);
    } catch (const ValidationError& e) {
      throw SpecValidationError(e.what());
    }
  }
  if (kv.contains("threads"))
    s.threads = parse_int<std::size_t>(kv["threads"], "threads");
  validate(s);
  return s;
}

void write_report_csv(std::ostream& os, const MonteCarloReport& r) {
  switch (r.kind) {
    case ExperimentKind::SupportSweep:
      os << "K,khat,mean_rel_err,trials\n";
      for (const auto& p : r.points)
        os << p.k << ',' << p.khat << ',' << format_double(p.mean_relative_error)
           << ',' << p.trials << '\n';
      break;
    case ExperimentKind::Convergence:
      os << "sweep,mean_rel_err,trials\n";
      for (const auto& p : r.points)
        os << p.sweep << ',' << format_double(p.mean_relative_error) << ','
           << p.trials << '\n';
      break;
    case ExperimentKind::PhaseTransition:
      os << "L,K,recovery_rate_pct,trials,mean_dot_products\n";
      for (const auto& p : r.points)
        os << p.l << ',' << p.k << ',' << format_double(p.recovery_rate_pct) << ','
           << p.trials << ',' << format_double(p.mean_dot_products) << '\n';
      break;
  }
}

MonteCarloReport read_report_csv(std::istream& is, ExperimentKind kind) {
  MonteCarloReport r{kind, {}};
  std::string line;
  if (!std::getline(is, line)) throw ParseError("report csv: missing header");
  while (std::getline(is, line)) {
    if (trim(line).empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    auto num = [&](std::size_t i) {
      double v = 0.0;
      const std::string& c = f.at(i);
      auto [p, ec] = std::from_chars(c.data(), c.data() + c.size(), v);
      if (ec != std::errc() || p != c.data() + c.size())
        throw ParseError("report csv: bad number '" + c + "'");
      return v;
    };
    auto cnt = [&](std::size_t i) { return static_cast<std::size_t>(num(i)); };
    ReportPoint p;
    switch (kind) {
      case ExperimentKind::SupportSweep:
        if (f.size() != 4) throw ParseError("report csv: expected 4 columns");
        p.k = cnt(0), p.khat = cnt(1), p.mean_relative_error = num(2), p.trials = cnt(3);
        break;
      case ExperimentKind::Convergence:
        if (f.size() != 3) throw ParseError("report csv: expected 3 columns");
        p.sweep = cnt(0), p.mean_relative_error = num(1), p.trials = cnt(2);
        break;
      case ExperimentKind::PhaseTransition:
        if (f.size() != 5) throw ParseError("report csv: expected 5 columns");
        p.l = cnt(0), p.k = cnt(1), p.recovery_rate_pct = num(2), p.trials = cnt(3),
        p.mean_dot_products = num(4);
        break;
    }
    r.points.push_back(std::move(p));
  }
  return r;
}

void write_report_json(std::ostream& os, const MonteCarloReport& r) {
  nlohmann::ordered_json j;
  j["kind"] = std::string(to_string(r.kind));
  auto& pts = j["points"] = nlohmann::ordered_json::array();
  for (const auto& p : r.points) {
    nlohmann::ordered_json e;
    e["L"] = p.l;
    e["K"] = p.k;
    e["khat"] = p.khat;
    e["sweep"] = p.sweep;
    e["mean_rel_err"] = p.mean_relative_error;
    e["recovery_rate_pct"] = p.recovery_rate_pct;
    e["mean_dot_products"] = p.mean_dot_products;
    e["trials"] = p.trials;
    if (!p.outcomes.empty()) {
      auto& outs = e["outcomes"] = nlohmann::ordered_json::array();
      for (const auto& o : p.outcomes)
        outs.push_back({{"relative_error", o.relative_error},
                        {"success", o.success},
                        {"dot_products", o.dot_products}});
    }
    pts.push_back(std::move(e));
  }
  os << j.dump(2) << '\n';
}

void write_classification_csv(std::ostream& os, const ClassDictionary& dict,
                              const ClassificationResult& r) {
  os << "class,residual,predicted\n";
  for (std::size_t i = 0; i < dict.class_ranges.size(); ++i) {
    os << dict.class_ranges[i].class_id << ',' << format_double(r.residuals[i])
       << ',' << (i == r.predicted_index ? 1 : 0) << '\n';
  }
}

void write_classification_json(std::ostream& os, const ClassDictionary& dict,
                               const ClassificationResult& r) {
  nlohmann::ordered_json j;
  j["predicted"] = r.predicted;
  auto& res = j["residuals"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < dict.class_ranges.size(); ++i) {
    res.push_back({{"class", dict.class_ranges[i].class_id},
                   {"residual", r.residuals[i]}});
  }
  os << j.dump(2) << '\n';
}

}  // namespace srk
