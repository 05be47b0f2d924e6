#include "gluon/newton_schulz.hpp"

#include <stdexcept>

namespace gluon {

Matrix ns_orthogonalize(const Matrix& g, const NewtonSchulzOptions& opt) {
  if (opt.iterations < 0)
    throw std::invalid_argument("ns_orthogonalize: iterations must be >= 0");
  if (!g.all_finite())
    throw std::invalid_argument("ns_orthogonalize: non-finite input");

  const double fro = frobenius_norm(g);
  if (fro == 0.0) return Matrix(g.rows(), g.cols());

  // Keep the Gram matrix X X^T small by working in the wide orientation.
  const bool transposed = g.rows() > g.cols();
  Matrix x = (1.0 / fro) * (transposed ? transpose(g) : g);

  for (int it = 0; it < opt.iterations; ++it) {
    const Matrix a = matmul_abt(x, x);
    const Matrix b = add_scaled(opt.b, a, opt.c, matmul(a, a));
    x = add_scaled(opt.a, x, 1.0, matmul(b, x));
  }

  return transposed ? transpose(x) : x;
}

}  // namespace gluon
