#include "gluon/matrix.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "gluon/kernels.hpp"

namespace gluon {

namespace {

void check_shape(const Matrix& a, const Matrix& b, const char* op) {
  if (!a.same_shape(b))
    throw std::invalid_argument(std::string(op) + ": shape mismatch " +
                                a.shape_str() + " vs " + b.shape_str());
}

std::size_t checked_extent(std::int64_t rows, std::int64_t cols) {
  if (rows < 0 || cols < 0)
    throw std::invalid_argument("Matrix: negative dimension");
  return static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
}

}  // namespace

Matrix::Matrix(std::int64_t rows, std::int64_t cols)
    : rows_(rows), cols_(cols), data_(checked_extent(rows, cols)) {}

Matrix::Matrix(std::int64_t rows, std::int64_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (rows < 0 || cols < 0)
    throw std::invalid_argument("Matrix: negative dimension");
  if (static_cast<std::int64_t>(data_.size()) != rows * cols)
    throw std::invalid_argument("Matrix: data size does not match shape");
  for (std::size_t i = 0; i < data_.size(); ++i)
    if (!std::isfinite(data_[i]))
      throw std::invalid_argument("Matrix: non-finite entry at flat index " +
                                  std::to_string(i));
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = static_cast<std::int64_t>(rows.size());
  cols_ = rows_ > 0 ? static_cast<std::int64_t>(rows.begin()->size()) : 0;
  data_.reserve(static_cast<std::size_t>(rows_ * cols_));
  for (const auto& r : rows) {
    if (static_cast<std::int64_t>(r.size()) != cols_)
      throw std::invalid_argument("Matrix: ragged initializer");
    for (double v : r) {
      if (!std::isfinite(v))
        throw std::invalid_argument("Matrix: non-finite entry in initializer");
      data_.push_back(v);
    }
  }
}

bool Matrix::all_finite() const {
  for (double v : data_)
    if (!std::isfinite(v)) return false;
  return true;
}

std::string Matrix::shape_str() const {
  return std::to_string(rows_) + "x" + std::to_string(cols_);
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  return add_scaled(1.0, a, 1.0, b);
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  return add_scaled(1.0, a, -1.0, b);
}

Matrix operator*(double s, const Matrix& a) {
  Matrix out(a.rows(), a.cols());
  const double* pa = a.data();
  double* po = out.data();
  for (std::int64_t i = 0; i < a.size(); ++i) po[i] = s * pa[i];
  return out;
}

Matrix add_scaled(double alpha, const Matrix& a, double beta, const Matrix& b) {
  check_shape(a, b, "add_scaled");
  Matrix out(a.rows(), a.cols());
  kernels::add_scaled(alpha, a.data(), beta, b.data(), out.data(), a.size());
  return out;
}

Matrix transpose(const Matrix& a) {
  Matrix out(a.cols(), a.rows());
  for (std::int64_t i = 0; i < a.rows(); ++i)
    for (std::int64_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
  return out;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows())
    throw std::invalid_argument("matmul: inner dimension mismatch " +
                                a.shape_str() + " * " + b.shape_str());
  Matrix out(a.rows(), b.cols());
  kernels::matmul(a.data(), b.data(), out.data(), a.rows(), a.cols(), b.cols());
  return out;
}

Matrix matmul_abt(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols())
    throw std::invalid_argument("matmul_abt: inner dimension mismatch " +
                                a.shape_str() + " * (" + b.shape_str() + ")^T");
  Matrix out(a.rows(), b.rows());
  kernels::matmul_abt(a.data(), b.data(), out.data(), a.rows(), a.cols(),
                      b.rows());
  return out;
}

double frobenius_dot(const Matrix& a, const Matrix& b) {
  check_shape(a, b, "frobenius_dot");
  return kernels::dot(a.data(), b.data(), a.rows(), a.cols());
}

double frobenius_norm(const Matrix& a) {
  return std::sqrt(kernels::sum_squares(a.data(), a.rows(), a.cols()));
}

double entrywise_l1_norm(const Matrix& a) {
  return kernels::sum_abs(a.data(), a.rows(), a.cols());
}

double max_abs_entry(const Matrix& a) {
  return kernels::max_abs(a.data(), a.rows(), a.cols());
}

Matrix sign(const Matrix& a) {
  Matrix out(a.rows(), a.cols());
  const double* pa = a.data();
  double* po = out.data();
  for (std::int64_t i = 0; i < a.size(); ++i)
    po[i] = pa[i] > 0.0 ? 1.0 : (pa[i] < 0.0 ? -1.0 : 0.0);
  return out;
}

}  // namespace gluon
