#pragma once

// Minimal dense linear algebra for the Kaczmarz family.
//
// Storage is row-major so that the row read in every projection step is a
// contiguous span. Scalars are double throughout.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace srk {

/// Dense real vector. Entries are finite at construction.
class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t len, double fill = 0.0);
  explicit Vector(std::vector<double> data);
  Vector(std::initializer_list<double> values);

  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  double operator[](std::size_t i) const noexcept { return data_[i]; }
  double& operator[](std::size_t i) noexcept { return data_[i]; }

  std::span<const double> span() const noexcept { return data_; }
  std::span<double> span() noexcept { return data_; }
  operator std::span<const double>() const noexcept { return data_; }

  const std::vector<double>& values() const noexcept { return data_; }
  auto begin() const noexcept { return data_.begin(); }
  auto end() const noexcept { return data_.end(); }

  friend bool operator==(const Vector&, const Vector&) = default;

 private:
  std::vector<double> data_;
};

/// Row-major dense matrix with rows >= 1 and cols >= 1.
class DenseMatrix {
 public:
  /// Zero matrix.
  DenseMatrix(std::size_t rows, std::size_t cols);
  /// Takes ownership of row-major `data`; throws DimensionError on a size
  /// mismatch and InvalidValueError on a non-finite entry.
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data);
  /// Nested-list literal, one inner list per row.
  DenseMatrix(std::initializer_list<std::initializer_list<double>> rows);

  static DenseMatrix identity(std::size_t n);
  /// n x 1 matrix holding `v`.
  static DenseMatrix column(const Vector& v);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double operator()(std::size_t i, std::size_t j) const noexcept {
    return data_[i * cols_ + j];
  }
  double& operator()(std::size_t i, std::size_t j) noexcept {
    return data_[i * cols_ + j];
  }

  std::span<const double> row(std::size_t i) const noexcept {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<double> row(std::size_t i) noexcept {
    return {data_.data() + i * cols_, cols_};
  }

  Vector col(std::size_t j) const;
  void set_col(std::size_t j, std::span<const double> values);

  std::span<const double> data() const noexcept { return data_; }

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

/// Sum of u_k v_k. Throws DimensionError on length mismatch.
double dot(std::span<const double> u, std::span<const double> v);

/// Squared Euclidean norm of each row.
Vector row_norms_sq(const DenseMatrix& a);

double frobenius_norm_sq(const DenseMatrix& a);

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& x);

/// a * x for a vector x.
Vector matvec(const DenseMatrix& a, std::span<const double> x);

DenseMatrix transpose(const DenseMatrix& a);

/// Elementwise a - b.
DenseMatrix subtract(const DenseMatrix& a, const DenseMatrix& b);

/// Minimizer of ||b - A x||_2 through the normal equations, solved by
/// Gaussian elimination with partial pivoting. Intended as a small-instance
/// reference, not a production solver. Throws SingularMatrixError when
/// A^T A has a pivot below 1e-12 of its largest diagonal entry, or when
/// A has fewer rows than columns.
Vector least_squares_oracle(const DenseMatrix& a, const Vector& b);

}  // namespace srk
