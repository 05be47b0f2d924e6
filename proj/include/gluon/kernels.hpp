// Low-level dense kernels with a serial reference implementation and an
// OpenMP driver. Parallelism only partitions independent output rows;
// every row (and every reduction partial) is computed by the same code
// in the same order in both drivers, so results are bit-identical.
//
// The serial namespace is the reference used by tests and benchmarks;
// the top-level entry points pick the OpenMP driver when it is compiled
// in and the problem is large enough to pay for thread startup.

#pragma once

#include <cstdint>

namespace gluon::kernels {

namespace serial {

// c (m x n) = a (m x k) * b (k x n), row-major.
void matmul(const double* a, const double* b, double* c, std::int64_t m,
            std::int64_t k, std::int64_t n);

// c (m x n) = a (m x k) * b^T with b (n x k), row-major.
void matmul_abt(const double* a, const double* b, double* c, std::int64_t m,
                std::int64_t k, std::int64_t n);

// out = alpha*a + beta*b elementwise over n entries.
void add_scaled(double alpha, const double* a, double beta, const double* b,
                double* out, std::int64_t n);

// Row-partitioned reductions: each row's partial is accumulated left to
// right, partials are combined in row order.
double sum_squares(const double* a, std::int64_t rows, std::int64_t cols);
double sum_abs(const double* a, std::int64_t rows, std::int64_t cols);
double max_abs(const double* a, std::int64_t rows, std::int64_t cols);
double dot(const double* a, const double* b, std::int64_t rows,
           std::int64_t cols);

}  // namespace serial

void matmul(const double* a, const double* b, double* c, std::int64_t m,
            std::int64_t k, std::int64_t n);
void matmul_abt(const double* a, const double* b, double* c, std::int64_t m,
                std::int64_t k, std::int64_t n);
void add_scaled(double alpha, const double* a, double beta, const double* b,
                double* out, std::int64_t n);
double sum_squares(const double* a, std::int64_t rows, std::int64_t cols);
double sum_abs(const double* a, std::int64_t rows, std::int64_t cols);
double max_abs(const double* a, std::int64_t rows, std::int64_t cols);
double dot(const double* a, const double* b, std::int64_t rows,
           std::int64_t cols);

}  // namespace gluon::kernels
