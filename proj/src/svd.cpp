#include "gluon/svd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace gluon {

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kOffDiagTol = 1e-12;

struct JacobiResult {
  Matrix w;                   // rotated copy of the input, columns = u_j * sigma_j
  Matrix v;                   // accumulated right rotations
  std::vector<double> sigma;  // column norms of w, unsorted
};

// One-sided (Hestenes) Jacobi on b with rows >= cols: orthogonalizes the
// columns of a working copy by plane rotations, accumulating them into v.
// Convergence is reached when every normalized column dot product
// |w_j . w_l| / (|w_j| |w_l|) is at most kOffDiagTol.
JacobiResult one_sided_jacobi(const Matrix& b) {
  const std::int64_t m = b.rows();
  const std::int64_t n = b.cols();
  Matrix w = b;
  Matrix v(n, n);
  for (std::int64_t j = 0; j < n; ++j) v(j, j) = 1.0;

  double off = 0.0;
  bool converged = (n <= 1);
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    off = 0.0;
    for (std::int64_t j = 0; j + 1 < n; ++j) {
      for (std::int64_t l = j + 1; l < n; ++l) {
        double alpha = 0.0, beta = 0.0, gamma = 0.0;
        for (std::int64_t i = 0; i < m; ++i) {
          const double wj = w(i, j), wl = w(i, l);
          alpha += wj * wj;
          beta += wl * wl;
          gamma += wj * wl;
        }
        if (alpha == 0.0 || beta == 0.0 || gamma == 0.0) continue;
        const double denom = std::sqrt(alpha * beta);
        off = std::max(off, std::abs(gamma) / denom);
        if (std::abs(gamma) <= kOffDiagTol * denom) continue;

        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t =
            (zeta >= 0.0 ? 1.0 : -1.0) /
            (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double cs = 1.0 / std::sqrt(1.0 + t * t);
        const double sn = cs * t;
        for (std::int64_t i = 0; i < m; ++i) {
          const double wj = w(i, j);
          w(i, j) = cs * wj - sn * w(i, l);
          w(i, l) = sn * wj + cs * w(i, l);
        }
        for (std::int64_t i = 0; i < n; ++i) {
          const double vj = v(i, j);
          v(i, j) = cs * vj - sn * v(i, l);
          v(i, l) = sn * vj + cs * v(i, l);
        }
      }
    }
    converged = (off <= kOffDiagTol);
  }
  if (!converged)
    throw std::runtime_error(
        "reduced_svd: one-sided Jacobi did not converge in " +
        std::to_string(kMaxSweeps) +
        " sweeps (off-diagonal residual " + std::to_string(off) + ")");

  JacobiResult r{std::move(w), std::move(v), std::vector<double>(n)};
  for (std::int64_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::int64_t i = 0; i < m; ++i) s += r.w(i, j) * r.w(i, j);
    r.sigma[j] = std::sqrt(s);
  }
  return r;
}

ReducedSvd reduced_svd_impl(const Matrix& a, double rank_tolerance,
                            bool relative_default) {
  if (!a.all_finite())
    throw std::invalid_argument("reduced_svd: non-finite input");

  // Work on the tall orientation; swap factors back afterwards.
  const bool transposed = a.rows() < a.cols();
  const Matrix b = transposed ? transpose(a) : a;
  const std::int64_t m = b.rows();
  const std::int64_t n = b.cols();

  JacobiResult jr = one_sided_jacobi(b);

  std::vector<std::int64_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::int64_t x, std::int64_t y) {
    return jr.sigma[x] > jr.sigma[y];
  });

  const double sigma_max = n > 0 ? jr.sigma[order[0]] : 0.0;
  const double tol = relative_default ? 1e-12 * sigma_max : rank_tolerance;

  std::int64_t rank = 0;
  for (std::int64_t j = 0; j < n; ++j)
    if (jr.sigma[order[j]] > tol) ++rank;

  Matrix u(m, rank);
  Matrix v(n, rank);
  std::vector<double> sigma(rank);
  for (std::int64_t jj = 0; jj < rank; ++jj) {
    const std::int64_t j = order[jj];
    sigma[jj] = jr.sigma[j];
    const double inv = 1.0 / jr.sigma[j];
    for (std::int64_t i = 0; i < m; ++i) u(i, jj) = jr.w(i, j) * inv;
    for (std::int64_t i = 0; i < n; ++i) v(i, jj) = jr.v(i, j);
  }

  if (transposed) return ReducedSvd{std::move(v), std::move(sigma), std::move(u)};
  return ReducedSvd{std::move(u), std::move(sigma), std::move(v)};
}

}  // namespace

ReducedSvd reduced_svd(const Matrix& a) { return reduced_svd_impl(a, 0.0, true); }

ReducedSvd reduced_svd(const Matrix& a, double rank_tolerance) {
  if (!(rank_tolerance >= 0.0))
    throw std::invalid_argument("reduced_svd: rank_tolerance must be >= 0");
  return reduced_svd_impl(a, rank_tolerance, false);
}

double spectral_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  const ReducedSvd s = reduced_svd(a);
  return s.sigma.empty() ? 0.0 : s.sigma.front();
}

double nuclear_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  const ReducedSvd s = reduced_svd(a);
  double sum = 0.0;
  for (double v : s.sigma) sum += v;
  return sum;
}

}  // namespace gluon
