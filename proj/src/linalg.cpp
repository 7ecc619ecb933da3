#include "srk/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "srk/errors.hpp"

namespace srk {

namespace {

void require_finite(std::span<const double> values, const char* what) {
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw InvalidValueError(std::string(what) + ": non-finite entry");
    }
  }
}

void require_shape(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0) {
    throw DimensionError("DenseMatrix: rows and cols must be >= 1");
  }
}

std::string shape_str(std::size_t r, std::size_t c) {
  return std::to_string(r) + "x" + std::to_string(c);
}

}  // namespace

Vector::Vector(std::size_t len, double fill) : data_(len, fill) {
  require_finite(data_, "Vector");
}

Vector::Vector(std::vector<double> data) : data_(std::move(data)) {
  require_finite(data_, "Vector");
}

Vector::Vector(std::initializer_list<double> values) : data_(values) {
  require_finite(data_, "Vector");
}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols) {
  require_shape(rows, cols);
  data_.assign(rows * cols, 0.0);
}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols,
                         std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  require_shape(rows, cols);
  if (data_.size() != rows * cols) {
    throw DimensionError("DenseMatrix: data length " +
                         std::to_string(data_.size()) + " does not match " +
                         shape_str(rows, cols));
  }
  require_finite(data_, "DenseMatrix");
}

DenseMatrix::DenseMatrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  require_shape(rows_, cols_);
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) {
      throw DimensionError("DenseMatrix: ragged row literal");
    }
    data_.insert(data_.end(), r.begin(), r.end());
  }
  require_finite(data_, "DenseMatrix");
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::column(const Vector& v) {
  return DenseMatrix(v.size(), 1, v.values());
}

Vector DenseMatrix::col(std::size_t j) const {
  std::vector<double> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
  return Vector(std::move(out));
}

void DenseMatrix::set_col(std::size_t j, std::span<const double> values) {
  if (values.size() != rows_ || j >= cols_) {
    throw DimensionError("DenseMatrix::set_col: shape mismatch");
  }
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = values[i];
}

double dot(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) {
    throw DimensionError("dot: lengths " + std::to_string(u.size()) + " and " +
                         std::to_string(v.size()));
  }
  double s = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) s += u[k] * v[k];
  return s;
}

Vector row_norms_sq(const DenseMatrix& a) {
  std::vector<double> out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto r = a.row(i);
    out[i] = dot(r, r);
  }
  return Vector(std::move(out));
}

double frobenius_norm_sq(const DenseMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto r = a.row(i);
    s += dot(r, r);
  }
  return s;
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& x) {
  if (a.cols() != x.rows()) {
    throw DimensionError("matmul: " + shape_str(a.rows(), a.cols()) + " * " +
                         shape_str(x.rows(), x.cols()));
  }
  DenseMatrix out(a.rows(), x.cols());
  // i-k-j order keeps both x and out row-contiguous.
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto out_row = out.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      auto x_row = x.row(k);
      for (std::size_t j = 0; j < x.cols(); ++j) out_row[j] += aik * x_row[j];
    }
  }
  return out;
}

Vector matvec(const DenseMatrix& a, std::span<const double> x) {
  if (a.cols() != x.size()) {
    throw DimensionError("matvec: " + shape_str(a.rows(), a.cols()) +
                         " * vector of length " + std::to_string(x.size()));
  }
  std::vector<double> out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) out[i] = dot(a.row(i), x);
  return Vector(std::move(out));
}

DenseMatrix transpose(const DenseMatrix& a) {
  DenseMatrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

DenseMatrix subtract(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("subtract: " + shape_str(a.rows(), a.cols()) +
                         " vs " + shape_str(b.rows(), b.cols()));
  }
  DenseMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto ra = a.row(i);
    auto rb = b.row(i);
    auto ro = out.row(i);
    for (std::size_t j = 0; j < a.cols(); ++j) ro[j] = ra[j] - rb[j];
  }
  return out;
}

Vector least_squares_oracle(const DenseMatrix& a, const Vector& b) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (b.size() != m) {
    throw DimensionError("least_squares_oracle: b has length " +
                         std::to_string(b.size()) + ", A has " +
                         std::to_string(m) + " rows");
  }
  if (m < n) {
    throw SingularMatrixError(
        "least_squares_oracle: fewer rows than columns, normal equations are "
        "rank deficient");
  }

  // Augmented normal system [A^T A | A^T b], n x (n + 1).
  const std::size_t w = n + 1;
  std::vector<double> g(n * w, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    auto r = a.row(i);
    for (std::size_t p = 0; p < n; ++p) {
      const double rp = r[p];
      for (std::size_t q = p; q < n; ++q) g[p * w + q] += rp * r[q];
      g[p * w + n] += rp * b[i];
    }
  }
  double max_diag = 0.0;
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < p; ++q) g[p * w + q] = g[q * w + p];
    max_diag = std::max(max_diag, std::abs(g[p * w + p]));
  }
  const double tol = 1e-12 * max_diag;

  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::abs(g[r * w + c]) > std::abs(g[piv * w + c])) piv = r;
    }
    if (!(std::abs(g[piv * w + c]) > tol)) {
      throw SingularMatrixError("least_squares_oracle: A^T A is singular");
    }
    if (piv != c) {
      std::swap_ranges(g.begin() + static_cast<std::ptrdiff_t>(c * w),
                       g.begin() + static_cast<std::ptrdiff_t>((c + 1) * w),
                       g.begin() + static_cast<std::ptrdiff_t>(piv * w));
    }
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = g[r * w + c] / g[c * w + c];
      if (f == 0.0) continue;
      for (std::size_t k = c; k < w; ++k) g[r * w + k] -= f * g[c * w + k];
    }
  }

  std::vector<double> x(n, 0.0);
  for (std::size_t c = n; c-- > 0;) {
    double s = g[c * w + n];
    for (std::size_t k = c + 1; k < n; ++k) s -= g[c * w + k] * x[k];
    x[c] = s / g[c * w + c];
  }
  return Vector(std::move(x));
}

}  // namespace srk
