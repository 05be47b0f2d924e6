// Dense row-major matrix of doubles used throughout the library.
// Construction from user data validates that every entry is finite;
// shape-creating constructors zero-initialize and skip the scan.

#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace gluon {

class Matrix {
 public:
  Matrix() = default;

  // rows x cols, zero-initialized.
  Matrix(std::int64_t rows, std::int64_t cols);

  // rows x cols from row-major data; throws std::invalid_argument on
  // size mismatch or non-finite entries.
  Matrix(std::int64_t rows, std::int64_t cols, std::vector<double> data);

  // Nested-list literal, e.g. Matrix({{3, 0}, {0, 4}}).
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  std::int64_t rows() const { return rows_; }
  std::int64_t cols() const { return cols_; }
  std::int64_t size() const { return rows_ * cols_; }

  double& operator()(std::int64_t i, std::int64_t j) {
    return data_[i * cols_ + j];
  }
  double operator()(std::int64_t i, std::int64_t j) const {
    return data_[i * cols_ + j];
  }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }

  bool same_shape(const Matrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }
  bool all_finite() const;

  std::string shape_str() const;

 private:
  std::int64_t rows_ = 0;
  std::int64_t cols_ = 0;
  std::vector<double> data_;
};

// Elementwise and BLAS-like operations. All shape mismatches throw
// std::invalid_argument. Heavy kernels route through gluon::kernels and
// give bit-identical results with or without OpenMP.

Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(double s, const Matrix& a);

// c = alpha*a + beta*b
Matrix add_scaled(double alpha, const Matrix& a, double beta, const Matrix& b);

Matrix transpose(const Matrix& a);

// a (m x k) times b (k x n).
Matrix matmul(const Matrix& a, const Matrix& b);

// a (m x k) times b^T (n x k) -> m x n.
Matrix matmul_abt(const Matrix& a, const Matrix& b);

// Frobenius inner product sum_ij a_ij * b_ij.
double frobenius_dot(const Matrix& a, const Matrix& b);

double frobenius_norm(const Matrix& a);
double entrywise_l1_norm(const Matrix& a);
double max_abs_entry(const Matrix& a);

// Entrywise sign with sign(0) = 0.
Matrix sign(const Matrix& a);

}  // namespace gluon
