#include "gluon/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace gluon::kernels {

namespace {

// Work thresholds below which the OpenMP drivers fall back to the serial
// loop. Thresholds affect scheduling only, never results.
constexpr std::int64_t kMatmulGrain = 1 << 15;
constexpr std::int64_t kElementGrain = 1 << 16;

inline void matmul_row(const double* a, const double* b, double* c,
                       std::int64_t i, std::int64_t k, std::int64_t n) {
  double* ci = c + i * n;
  std::fill(ci, ci + n, 0.0);
  const double* ai = a + i * k;
  for (std::int64_t l = 0; l < k; ++l) {
    const double ail = ai[l];
    const double* bl = b + l * n;
    for (std::int64_t j = 0; j < n; ++j) ci[j] += ail * bl[j];
  }
}

inline void matmul_abt_row(const double* a, const double* b, double* c,
                           std::int64_t i, std::int64_t k, std::int64_t n) {
  const double* ai = a + i * k;
  double* ci = c + i * n;
  for (std::int64_t j = 0; j < n; ++j) {
    const double* bj = b + j * k;
    double s = 0.0;
    for (std::int64_t l = 0; l < k; ++l) s += ai[l] * bj[l];
    ci[j] = s;
  }
}

inline double row_sum_squares(const double* row, std::int64_t cols) {
  double s = 0.0;
  for (std::int64_t j = 0; j < cols; ++j) s += row[j] * row[j];
  return s;
}

inline double row_sum_abs(const double* row, std::int64_t cols) {
  double s = 0.0;
  for (std::int64_t j = 0; j < cols; ++j) s += std::abs(row[j]);
  return s;
}

inline double row_max_abs(const double* row, std::int64_t cols) {
  double s = 0.0;
  for (std::int64_t j = 0; j < cols; ++j) s = std::max(s, std::abs(row[j]));
  return s;
}

inline double row_dot(const double* ra, const double* rb, std::int64_t cols) {
  double s = 0.0;
  for (std::int64_t j = 0; j < cols; ++j) s += ra[j] * rb[j];
  return s;
}

}  // namespace

namespace serial {

void matmul(const double* a, const double* b, double* c, std::int64_t m,
            std::int64_t k, std::int64_t n) {
  for (std::int64_t i = 0; i < m; ++i) matmul_row(a, b, c, i, k, n);
}

void matmul_abt(const double* a, const double* b, double* c, std::int64_t m,
                std::int64_t k, std::int64_t n) {
  for (std::int64_t i = 0; i < m; ++i) matmul_abt_row(a, b, c, i, k, n);
}

void add_scaled(double alpha, const double* a, double beta, const double* b,
                double* out, std::int64_t n) {
  for (std::int64_t i = 0; i < n; ++i) out[i] = alpha * a[i] + beta * b[i];
}

double sum_squares(const double* a, std::int64_t rows, std::int64_t cols) {
  double s = 0.0;
  for (std::int64_t i = 0; i < rows; ++i) s += row_sum_squares(a + i * cols, cols);
  return s;
}

double sum_abs(const double* a, std::int64_t rows, std::int64_t cols) {
  double s = 0.0;
  for (std::int64_t i = 0; i < rows; ++i) s += row_sum_abs(a + i * cols, cols);
  return s;
}

double max_abs(const double* a, std::int64_t rows, std::int64_t cols) {
  double s = 0.0;
  for (std::int64_t i = 0; i < rows; ++i)
    s = std::max(s, row_max_abs(a + i * cols, cols));
  return s;
}

double dot(const double* a, const double* b, std::int64_t rows,
           std::int64_t cols) {
  double s = 0.0;
  for (std::int64_t i = 0; i < rows; ++i)
    s += row_dot(a + i * cols, b + i * cols, cols);
  return s;
}

}  // namespace serial

void matmul(const double* a, const double* b, double* c, std::int64_t m,
            std::int64_t k, std::int64_t n) {
#ifdef _OPENMP
  if (m > 1 && m * k * n >= kMatmulGrain) {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < m; ++i) matmul_row(a, b, c, i, k, n);
    return;
  }
#endif
  serial::matmul(a, b, c, m, k, n);
}

void matmul_abt(const double* a, const double* b, double* c, std::int64_t m,
                std::int64_t k, std::int64_t n) {
#ifdef _OPENMP
  if (m > 1 && m * k * n >= kMatmulGrain) {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < m; ++i) matmul_abt_row(a, b, c, i, k, n);
    return;
  }
#endif
  serial::matmul_abt(a, b, c, m, k, n);
}

void add_scaled(double alpha, const double* a, double beta, const double* b,
                double* out, std::int64_t n) {
#ifdef _OPENMP
  if (n >= kElementGrain) {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) out[i] = alpha * a[i] + beta * b[i];
    return;
  }
#endif
  serial::add_scaled(alpha, a, beta, b, out, n);
}

// Parallel reductions compute per-row partials concurrently, then combine
// them in row order; this matches the serial combine order exactly.

double sum_squares(const double* a, std::int64_t rows, std::int64_t cols) {
#ifdef _OPENMP
  if (rows > 1 && rows * cols >= kElementGrain) {
    std::vector<double> partial(rows);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < rows; ++i)
      partial[i] = row_sum_squares(a + i * cols, cols);
    double s = 0.0;
    for (std::int64_t i = 0; i < rows; ++i) s += partial[i];
    return s;
  }
#endif
  return serial::sum_squares(a, rows, cols);
}

double sum_abs(const double* a, std::int64_t rows, std::int64_t cols) {
#ifdef _OPENMP
  if (rows > 1 && rows * cols >= kElementGrain) {
    std::vector<double> partial(rows);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < rows; ++i)
      partial[i] = row_sum_abs(a + i * cols, cols);
    double s = 0.0;
    for (std::int64_t i = 0; i < rows; ++i) s += partial[i];
    return s;
  }
#endif
  return serial::sum_abs(a, rows, cols);
}

double max_abs(const double* a, std::int64_t rows, std::int64_t cols) {
#ifdef _OPENMP
  if (rows > 1 && rows * cols >= kElementGrain) {
    std::vector<double> partial(rows);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < rows; ++i)
      partial[i] = row_max_abs(a + i * cols, cols);
    double s = 0.0;
    for (std::int64_t i = 0; i < rows; ++i) s = std::max(s, partial[i]);
    return s;
  }
#endif
  return serial::max_abs(a, rows, cols);
}

double dot(const double* a, const double* b, std::int64_t rows,
           std::int64_t cols) {
#ifdef _OPENMP
  if (rows > 1 && rows * cols >= kElementGrain) {
    std::vector<double> partial(rows);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < rows; ++i)
      partial[i] = row_dot(a + i * cols, b + i * cols, cols);
    double s = 0.0;
    for (std::int64_t i = 0; i < rows; ++i) s += partial[i];
    return s;
  }
#endif
  return serial::dot(a, b, rows, cols);
}

}  // namespace gluon::kernels
