// Reduced singular value decomposition via one-sided Jacobi rotations.
// Deterministic: fixed cyclic pivot order, no data-dependent branching
// beyond the rotation guards, so identical inputs give identical output.

#pragma once

#include "gluon/matrix.hpp"

namespace gluon {

// a (m x n) == u * diag(sigma) * v^T with u (m x r), v (n x r) having
// orthonormal columns and sigma sorted in decreasing order. r is the
// number of singular values strictly above the rank tolerance; a zero
// matrix yields r == 0 and empty factors.
struct ReducedSvd {
  Matrix u;
  std::vector<double> sigma;
  Matrix v;
};

// Rank tolerance defaults to 1e-12 times the largest singular value.
ReducedSvd reduced_svd(const Matrix& a);

// Explicit absolute rank tolerance; must be >= 0. Singular values
// strictly greater than the tolerance are kept.
ReducedSvd reduced_svd(const Matrix& a, double rank_tolerance);

// Largest singular value (0 for an empty or zero matrix).
double spectral_norm(const Matrix& a);

// Sum of singular values.
double nuclear_norm(const Matrix& a);

}  // namespace gluon
