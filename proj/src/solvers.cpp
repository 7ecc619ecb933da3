#include "srk/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <string>

#include "srk/errors.hpp"
#include "srk/sampling.hpp"

namespace srk {

namespace {

// Top `size` scores, ties to the lower index. The comparator is a strict
// total order so the selected set does not depend on nth_element internals.
SupportSet top_k(std::span<const double> scores, std::size_t size,
                 std::vector<std::size_t>& scratch) {
  const std::size_t n = scores.size();
  scratch.resize(n);
  std::iota(scratch.begin(), scratch.end(), std::size_t{0});
  if (size < n) {
    auto before = [&](std::size_t p, std::size_t q) {
      return scores[p] > scores[q] || (scores[p] == scores[q] && p < q);
    };
    std::nth_element(scratch.begin(),
                     scratch.begin() + static_cast<std::ptrdiff_t>(size),
                     scratch.end(), before);
  }
  return SupportSet(std::vector<std::size_t>(scratch.begin(),
                                             scratch.begin() + static_cast<std::ptrdiff_t>(size)),
                    n);
}

void check_size(std::size_t size, std::size_t n, const char* who) {
  if (size < 1 || size > n) {
    throw InvalidSparsityError(std::string(who) + ": support size " +
                               std::to_string(size) + " outside [1, " +
                               std::to_string(n) + "]");
  }
}

// x += ((b - <row, x>) / ||row||^2) row. Two length-n inner products.
void project_inplace(std::span<double> x, std::span<const double> row,
                     double b, double row_norm_sq) {
  double ax = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) ax += row[k] * x[k];
  const double step = (b - ax) / row_norm_sq;
  for (std::size_t k = 0; k < x.size(); ++k) x[k] += step * row[k];
}

double norm_sq(std::span<const double> v) {
  double s = 0.0;
  for (double e : v) s += e * e;
  return s;
}

// Column-major working copy of the n x L iterate.
class Iterate {
 public:
  Iterate(std::size_t n, std::size_t l) : n_(n), l_(l), data_(n * l, 0.0) {}

  std::span<double> col(std::size_t c) { return {data_.data() + c * n_, n_}; }
  std::span<const double> col(std::size_t c) const {
    return {data_.data() + c * n_, n_};
  }

  DenseMatrix to_matrix() const {
    DenseMatrix out(n_, l_);
    for (std::size_t c = 0; c < l_; ++c) out.set_col(c, col(c));
    return out;
  }

  // l2 norm of every coordinate row across the L columns.
  void row_norms(std::vector<double>& out) const {
    out.assign(n_, 0.0);
    for (std::size_t c = 0; c < l_; ++c) {
      auto x = col(c);
      for (std::size_t k = 0; k < n_; ++k) out[k] += x[k] * x[k];
    }
    for (double& v : out) v = std::sqrt(v);
  }

 private:
  std::size_t n_;
  std::size_t l_;
  std::vector<double> data_;
};

double relative_residual(const DenseMatrix& a, const DenseMatrix& b,
                         const DenseMatrix& x, double b_norm) {
  const double r = std::sqrt(frobenius_norm_sq(subtract(b, matmul(a, x))));
  return b_norm > 0.0 ? r / b_norm : r;
}

}  // namespace

std::string_view to_string(Variant v) noexcept {
  switch (v) {
    case Variant::Cyclic: return "cyclic";
    case Variant::RK: return "rk";
    case Variant::SRK: return "srk";
    case Variant::SRK_MMV: return "srk-mmv";
  }
  return "unknown";
}

Variant parse_variant(std::string_view name) {
  if (name == "cyclic") return Variant::Cyclic;
  if (name == "rk") return Variant::RK;
  if (name == "srk") return Variant::SRK;
  if (name == "srk-mmv" || name == "srk_mmv") return Variant::SRK_MMV;
  throw ValidationError("unknown solver variant '" + std::string(name) + "'");
}

Vector kaczmarz_step(std::span<const double> x, std::span<const double> a,
                     double b) {
  if (x.size() != a.size()) {
    throw DimensionError("kaczmarz_step: iterate and row lengths differ");
  }
  const double nrm = norm_sq(a);
  if (!(nrm > 0.0)) throw ZeroRowError("kaczmarz_step: zero row");
  std::vector<double> out(x.begin(), x.end());
  project_inplace(out, a, b, nrm);
  return Vector(std::move(out));
}

Vector weighted_kaczmarz_step(std::span<const double> x,
                              std::span<const double> a, double b,
                              const WeightVector& w) {
  if (x.size() != a.size() || w.weights.size() != a.size()) {
    throw DimensionError("weighted_kaczmarz_step: length mismatch");
  }
  std::vector<double> wa(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) wa[k] = w.weights[k] * a[k];
  const double nrm = norm_sq(wa);
  if (!(nrm > 0.0)) throw ZeroRowError("weighted_kaczmarz_step: zero weighted row");
  std::vector<double> out(x.begin(), x.end());
  project_inplace(out, wa, b, nrm);
  return Vector(std::move(out));
}

SupportSet estimate_support_smv(std::span<const double> x, std::size_t size) {
  check_size(size, x.size(), "estimate_support_smv");
  std::vector<double> mags(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) mags[k] = std::abs(x[k]);
  std::vector<std::size_t> scratch;
  return top_k(mags, size, scratch);
}

SupportSet estimate_support_mmv(const DenseMatrix& x, std::size_t size) {
  check_size(size, x.rows(), "estimate_support_mmv");
  std::vector<double> norms(x.rows());
  for (std::size_t k = 0; k < x.rows(); ++k) norms[k] = std::sqrt(norm_sq(x.row(k)));
  std::vector<std::size_t> scratch;
  return top_k(norms, size, scratch);
}

WeightVector build_weight_vector(const SupportSet& s, std::size_t n,
                                 std::size_t j) {
  if (j < 1) throw InvalidValueError("build_weight_vector: j must be >= 1");
  if (!s.empty() && s.indices().back() >= n) {
    throw InvalidSparsityError("build_weight_vector: support index out of range");
  }
  Vector w(n, 1.0 / std::sqrt(static_cast<double>(j)));
  for (std::size_t k : s) w[k] = 1.0;
  return {std::move(w), j};
}

SolveResult solve(const DenseMatrix& a, const DenseMatrix& b,
                  const SolverConfig& cfg, const IterateObserver& observer) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  const std::size_t l = b.cols();
  const bool sparse = cfg.variant == Variant::SRK || cfg.variant == Variant::SRK_MMV;

  if (b.rows() != m) {
    throw DimensionError("solve: A has " + std::to_string(m) + " rows, B has " +
                         std::to_string(b.rows()));
  }
  if (cfg.sweeps < 1) throw InvalidValueError("solve: sweeps must be >= 1");
  if (cfg.variant != Variant::SRK_MMV && l != 1) {
    throw UnsupportedVariantError("solve: variant " +
                                  std::string(to_string(cfg.variant)) +
                                  " takes a single right-hand side, got L = " +
                                  std::to_string(l));
  }
  if (sparse) check_size(cfg.estimated_support, n, "solve");

  std::optional<RowSampler> sampler;
  if (cfg.variant == Variant::Cyclic) {
    const Vector a_norms = row_norms_sq(a);
    if (!(frobenius_norm_sq(a) > 0.0)) {
      throw DegenerateDistributionError("solve: A is all zero");
    }
    for (std::size_t i = 0; i < m; ++i) {
      if (!(a_norms[i] > 0.0)) {
        throw ZeroRowError("solve: cyclic Kaczmarz visits zero row " +
                           std::to_string(i));
      }
    }
  } else {
    sampler.emplace(a);
  }

  SeededRng rng(cfg.seed);
  Iterate x(n, l);
  SolveResult result{DenseMatrix(n, l), 0, 0, {}};
  const std::size_t total = cfg.sweeps * m;
  const double b_norm = std::sqrt(frobenius_norm_sq(b));

  std::vector<double> scores;
  std::vector<std::size_t> scratch;
  std::vector<double> weighted_row(n);
  std::vector<double> weights(n, 1.0);

  for (std::size_t j = 1; j <= total; ++j) {
    if (!sparse) {
      const std::size_t i =
          cfg.variant == Variant::Cyclic ? (j - 1) % m : sampler->sample(rng);
      project_inplace(x.col(0), a.row(i), b(i, 0), norm_sq(a.row(i)));
      result.dot_products += 2;
    } else {
      const std::size_t size = support_size_at(cfg.estimated_support, n, j);
      // A full-size support makes every weight 1, whatever the iterate.
      if (size < n) {
        if (cfg.variant == Variant::SRK_MMV) {
          x.row_norms(scores);
        } else {
          auto x0 = x.col(0);
          scores.resize(n);
          for (std::size_t k = 0; k < n; ++k) scores[k] = std::abs(x0[k]);
        }
        const SupportSet s = top_k(scores, size, scratch);
        std::fill(weights.begin(), weights.end(),
                  1.0 / std::sqrt(static_cast<double>(j)));
        for (std::size_t k : s) weights[k] = 1.0;
      } else {
        std::fill(weights.begin(), weights.end(), 1.0);
      }

      const std::size_t i = sampler->sample(rng);
      auto row = a.row(i);
      for (std::size_t k = 0; k < n; ++k) weighted_row[k] = weights[k] * row[k];

      for (std::size_t c = 0; c < l; ++c) {
        const double nrm = norm_sq(weighted_row);
        if (!(nrm > 0.0)) throw ZeroRowError("solve: zero weighted row");
        project_inplace(x.col(c), weighted_row, b(i, c), nrm);
        result.dot_products += 2;
      }
    }
    result.iterations_run = j;

    if (cfg.trace_every > 0 && j % cfg.trace_every == 0) {
      DenseMatrix snapshot = x.to_matrix();
      result.trace.push_back({j, relative_residual(a, b, snapshot, b_norm)});
      if (observer) observer(j, snapshot);
    }
  }

  result.solution = x.to_matrix();
  return result;
}

}  // namespace srk
